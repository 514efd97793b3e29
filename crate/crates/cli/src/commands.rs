//! Subcommands: argument handling and dispatch into the toolkit.

use clap::{Args, Parser, Subcommand};
use dweb::darboux::{
    extactic1, invariant_curves_deg2, linear_invariant_curves, separatrix_report, DarbouxCert,
    SeparatrixReport, Verdict, DEFAULT_BUDGET,
};
use dweb::dvariety::{
    check_rational_factor, foliation_of, invariance_certificate, is_first_integral,
    is_invariant_curve, lie_derivative, projectivize, Riccati, VectorField,
};
use dweb::numflow::{hyperbolicity, invariance_flow_check, singular_points, HYPERBOLIC_TOL};
use dweb::symweb::{
    discriminant, discriminant_locus, reduce, squarefree_factors, tang_webs, SymForm,
    TangencyResult, Web,
};
use dweb::{CPoly, QPoly, Rational, UPoly};
use num_complex::Complex64;
use thiserror::Error;

use crate::parse::{parse_form, parse_poly, ParseError};
use crate::report::{fmt_complex, Exit, Report, Value};

/// Environment variable holding the default tolerance.
pub const TOL_ENV: &str = "DWEB_TOL";

const FLOW_TOL: f64 = 1e-6;
const POINT_PRECISION: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(
    name = "dweb",
    version,
    about = "Invariant webs, foliations and curves of planar polynomial vector fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie derivative of a symmetric form along the field.
    Lie(Flags),
    /// The field's tangent foliation g dx - f dy.
    Foliation(Flags),
    /// Riccati equations of the field lifted to the projectivized tangent bundle.
    Projectivize(Flags),
    /// Tangency locus of two webs (two --form, or one --form against the field's foliation).
    Tangency(Flags),
    /// Discriminant of a web.
    Discriminant(Flags),
    /// Squarefree reduction of a web.
    Reduce(Flags),
    /// Whether the field leaves a web invariant.
    Invariance(Flags),
    /// Whether the field leaves the curve --curve invariant.
    Curve(Flags),
    /// Whether --curve / --den is a first integral.
    Firstintegral(Flags),
    /// Whether --curve / --den maps the field to a(t) d/dt for --target a(t).
    Factor(Flags),
    /// Invariant lines and conics over the rationals.
    Darboux(Flags),
    /// Singular points with multiplicities and linear parts.
    Singular(Flags),
    /// Hyperbolicity of singular points (all, or --point).
    Hyperbolic(Flags),
    /// Numeric check that flowing points of --curve stay on it.
    Flowcheck(Flags),
    /// Looks for a singular point on no invariant curve up to the degree bound.
    Certify(Flags),
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// First component f of f d/dx + g d/dy.
    #[arg(short = 'f', allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Second component g.
    #[arg(short = 'g', allow_hyphen_values = true)]
    pub g: Option<String>,
    /// A symmetric form in dx, dy; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub form: Vec<String>,
    /// A curve P(x, y), or the numerator of a rational function.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Denominator of a rational function (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub den: Option<String>,
    /// Target a(t) for the factor check, a polynomial in t.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Degree bound for curve searches.
    #[arg(long, default_value_t = 2)]
    pub degree_bound: u32,
    /// Numeric tolerance (default from DWEB_TOL, else per command).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step budget of the degree-2 elimination.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Flow time for flowcheck.
    #[arg(long, default_value_t = 5.0)]
    pub time: f64,
    /// Number of trajectories for flowcheck.
    #[arg(long, default_value_t = 8)]
    pub trials: usize,
    /// A point "a, b" with rational coordinates, for hyperbolic.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {source}")]
    Parse {
        flag: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Failed(_) => Exit::Negative,
            _ => Exit::Input,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

impl Command {
    pub fn flags(&self) -> &Flags {
        match self {
            Command::Lie(f)
            | Command::Foliation(f)
            | Command::Projectivize(f)
            | Command::Tangency(f)
            | Command::Discriminant(f)
            | Command::Reduce(f)
            | Command::Invariance(f)
            | Command::Curve(f)
            | Command::Firstintegral(f)
            | Command::Factor(f)
            | Command::Darboux(f)
            | Command::Singular(f)
            | Command::Hyperbolic(f)
            | Command::Flowcheck(f)
            | Command::Certify(f) => f,
        }
    }
}

impl Flags {
    fn poly(&self, flag: &'static str, src: Option<&String>) -> Result<QPoly, CliError> {
        let src = src.ok_or(CliError::Missing(flag))?;
        parse_poly(src).map_err(|source| CliError::Parse { flag, source })
    }

    fn field(&self) -> Result<VectorField, CliError> {
        let f = self.poly("-f", self.f.as_ref())?;
        let g = self.poly("-g", self.g.as_ref())?;
        VectorField::new(f, g).map_err(input)
    }

    fn curve(&self) -> Result<QPoly, CliError> {
        self.poly("--curve", self.curve.as_ref())
    }

    fn den(&self) -> Result<QPoly, CliError> {
        match &self.den {
            Some(_) => self.poly("--den", self.den.as_ref()),
            None => Ok(QPoly::one()),
        }
    }

    fn forms(&self) -> Result<Vec<SymForm>, CliError> {
        self.form
            .iter()
            .map(|s| {
                parse_form(s).map_err(|source| CliError::Parse {
                    flag: "--form",
                    source,
                })
            })
            .collect()
    }

    fn web(&self) -> Result<Web, CliError> {
        let form = self
            .forms()?
            .into_iter()
            .next()
            .ok_or(CliError::Missing("--form"))?;
        Web::new(form).map_err(input)
    }

    fn tol(&self, default: f64) -> Result<f64, CliError> {
        let tol = match self.tol {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| input(format!("{TOL_ENV}: not a number: {s}")))?,
                Err(_) => default,
            },
        };
        if tol > 0.0 && tol.is_finite() {
            Ok(tol)
        } else {
            Err(input(format!("tolerance must be positive, got {tol}")))
        }
    }
}

fn field_value(v: &VectorField) -> Value {
    Value::record([
        ("f", Value::Poly(v.f().clone())),
        ("g", Value::Poly(v.g().clone())),
    ])
}

fn cert_value(c: &DarbouxCert) -> Value {
    Value::record([
        ("curve", Value::Poly(c.curve().clone())),
        ("cofactor", Value::Poly(c.cofactor().clone())),
        ("degree", Value::Int(c.degree() as i64)),
    ])
}

/// A numeric polynomial with each coefficient in parentheses.
pub fn witness_text(p: &CPoly) -> String {
    let vars = p.vars();
    let mut pieces = Vec::new();
    for (m, c) in p.terms().rev() {
        let mono: Vec<String> = vars
            .iter()
            .zip(m.exponents())
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| {
                if k == 1 {
                    v.clone()
                } else {
                    format!("{v}^{k}")
                }
            })
            .collect();
        let coeff = format!("({})", fmt_complex(*c));
        pieces.push(if mono.is_empty() {
            coeff
        } else {
            format!("{coeff}*{}", mono.join("*"))
        });
    }
    if pieces.is_empty() {
        "0".to_string()
    } else {
        pieces.join(" + ")
    }
}

fn riccati_value(r: &Riccati) -> Value {
    Value::record([
        ("equation", Value::text(r.to_string())),
        ("q0", Value::Poly(r.q0().clone())),
        ("q1", Value::Poly(r.q1().clone())),
        ("q2", Value::Poly(r.q2().clone())),
    ])
}

fn point_text(loc: (Complex64, Complex64), exact: &Option<(Rational, Rational)>) -> String {
    match exact {
        Some((a, b)) => format!("({a}, {b})"),
        None => format!("({}, {})", fmt_complex(loc.0), fmt_complex(loc.1)),
    }
}

fn parse_point(src: &str) -> Result<(Rational, Rational), CliError> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 2 {
        return Err(input(format!("--point: expected \"a, b\", got {src:?}")));
    }
    let coord = |s: &str| -> Result<Rational, CliError> {
        let p = parse_poly(s).map_err(|source| CliError::Parse {
            flag: "--point",
            source,
        })?;
        p.constant_value()
            .ok_or_else(|| input(format!("--point: {s:?} is not a number")))
    };
    Ok((coord(parts[0])?, coord(parts[1])?))
}

fn to_f64(q: &Rational) -> f64 {
    dweb::scalar::rational_to_f64(q)
}

/// Runs one parsed command; `echo` is the command line to record.
pub fn execute(cmd: &Command, echo: &str) -> Result<Report, CliError> {
    let fl = cmd.flags();
    let mut r = Report::new(echo);
    match cmd {
        Command::Lie(_) => {
            let v = fl.field()?;
            let w = fl
                .forms()?
                .into_iter()
                .next()
                .ok_or(CliError::Missing("--form"))?;
            r.push("field", field_value(&v));
            r.push("form", Value::Form(w.clone()));
            r.push("lie_derivative", Value::Form(lie_derivative(&v, &w)));
        }
        Command::Foliation(_) => {
            let v = fl.field()?;
            let w = foliation_of(&v).map_err(input)?;
            r.push("field", field_value(&v));
            r.push("foliation", Value::Form(w.form().clone()));
        }
        Command::Projectivize(_) => {
            let v = fl.field()?;
            let pf = projectivize(&v);
            r.push("field", field_value(&v));
            r.push("chart1", riccati_value(pf.chart1()));
            r.push("chart2", riccati_value(pf.chart2()));
            r.push("overlap_identity", Value::Bool(pf.overlap_holds()));
            if !pf.overlap_holds() {
                return Ok(r.verdict("chart overlap identity fails", Exit::Negative));
            }
        }
        Command::Tangency(_) => {
            let forms = fl.forms()?;
            let (a, b) = match forms.len() {
                2 => (forms[0].clone(), forms[1].clone()),
                1 => {
                    let v = fl.field()?;
                    r.push("field", field_value(&v));
                    (
                        foliation_of(&v).map_err(input)?.into_form(),
                        forms[0].clone(),
                    )
                }
                0 => return Err(CliError::Missing("--form")),
                _ => return Err(input("tangency takes at most two --form")),
            };
            r.push("first", Value::Form(a.clone()));
            r.push("second", Value::Form(b.clone()));
            let wa = Web::new(a).map_err(input)?;
            let wb = Web::new(b).map_err(input)?;
            match tang_webs(&wa, &wb) {
                TangencyResult::Locus(p) => {
                    r.push("transverse_everywhere", Value::Bool(p.is_constant()));
                    r.push("tangency", Value::Poly(p));
                }
                TangencyResult::CommonSubweb(w) => {
                    r.push("common_subweb", Value::Form(w.into_form()));
                    return Ok(r.verdict("webs share a subweb: tangent everywhere", Exit::Ok));
                }
            }
        }
        Command::Discriminant(_) => {
            let w = fl.web()?;
            r.push("web", Value::Form(w.form().clone()));
            r.push("discriminant", Value::Poly(discriminant(&w)));
            r.push("locus", Value::Poly(discriminant_locus(&w)));
        }
        Command::Reduce(_) => {
            let w = fl.web()?;
            r.push("web", Value::Form(w.form().clone()));
            r.push("reduced", Value::Form(reduce(&w).into_form()));
            let factors = squarefree_factors(&w)
                .into_iter()
                .map(|(f, k)| {
                    Value::record([
                        ("factor", Value::Form(f.into_form())),
                        ("multiplicity", Value::Int(k as i64)),
                    ])
                })
                .collect();
            r.push("squarefree_factors", Value::List(factors));
        }
        Command::Invariance(_) => {
            let v = fl.field()?;
            let w = fl.web()?;
            r.push("field", field_value(&v));
            r.push("form", Value::Form(w.form().clone()));
            return Ok(match invariance_certificate(&v, &w) {
                Some(c) => {
                    r.push("cofactor", Value::Poly(c.cofactor().clone()));
                    r.verdict("invariant", Exit::Ok)
                }
                None => r.verdict("not invariant", Exit::Negative),
            });
        }
        Command::Curve(_) => {
            let v = fl.field()?;
            let p = fl.curve()?;
            r.push("field", field_value(&v));
            r.push("curve", Value::Poly(p.clone()));
            return Ok(match is_invariant_curve(&v, &p).map_err(input)? {
                Some(c) => {
                    r.push(
                        "radical",
                        Value::Poly(c.polynomial().expect("curve").clone()),
                    );
                    r.push("cofactor", Value::Poly(c.cofactor().clone()));
                    r.verdict("invariant", Exit::Ok)
                }
                None => r.verdict("not invariant", Exit::Negative),
            });
        }
        Command::Firstintegral(_) => {
            let v = fl.field()?;
            let (p, q) = (fl.curve()?, fl.den()?);
            r.push("field", field_value(&v));
            r.push("numerator", Value::Poly(p.clone()));
            r.push("denominator", Value::Poly(q.clone()));
            let yes = is_first_integral(&v, &p, &q).map_err(input)?;
            return Ok(if yes {
                r.verdict("first integral", Exit::Ok)
            } else {
                r.verdict("not a first integral", Exit::Negative)
            });
        }
        Command::Factor(_) => {
            let v = fl.field()?;
            let (p, q) = (fl.curve()?, fl.den()?);
            let a = fl.poly("--target", fl.target.as_ref())?;
            let u = UPoly::from_mpoly(&a, "t")
                .ok_or_else(|| input("--target: expected a polynomial in t"))?;
            r.push("field", field_value(&v));
            r.push("numerator", Value::Poly(p.clone()));
            r.push("denominator", Value::Poly(q.clone()));
            r.push("target", Value::Poly(a));
            let yes = check_rational_factor(&v, (&p, &q), &u).map_err(input)?;
            return Ok(if yes {
                r.verdict("rational factor", Exit::Ok)
            } else {
                r.verdict("not a rational factor", Exit::Negative)
            });
        }
        Command::Darboux(_) => {
            let v = fl.field()?;
            let bound = fl.degree_bound;
            if !(1..=2).contains(&bound) {
                return Err(input("--degree-bound must be 1 or 2"));
            }
            r.push("field", field_value(&v));
            r.push("degree_bound", Value::Int(bound as i64));
            r.push("extactic", Value::Poly(extactic1(&v)));
            let lin = linear_invariant_curves(&v);
            let mut curves = lin.curves.clone();
            let mut witnesses = lin.witnesses.clone();
            let (mut degenerate, mut complete, mut stuck) =
                (lin.degenerate, lin.complete, lin.stuck);
            if bound == 2 && !degenerate {
                let con = invariant_curves_deg2(&v, fl.budget);
                degenerate |= con.degenerate;
                complete &= con.complete;
                stuck += con.stuck;
                curves.extend(con.curves);
                witnesses.extend(con.witnesses);
            }
            r.push("degenerate", Value::Bool(degenerate));
            r.push("complete", Value::Bool(complete));
            r.push(
                "curves",
                Value::List(curves.iter().map(cert_value).collect()),
            );
            r.push(
                "numeric_witnesses",
                Value::List(
                    witnesses
                        .iter()
                        .map(|w| Value::text(witness_text(w)))
                        .collect(),
                ),
            );
            r.push("unresolved", Value::Int((witnesses.len() + stuck) as i64));
            if degenerate {
                return Ok(r.verdict(
                    "degenerate: infinitely many invariant curves (first-integral signal)",
                    Exit::Ok,
                ));
            }
            if !complete {
                return Ok(r.verdict("incomplete: elimination budget exhausted", Exit::Budget));
            }
        }
        Command::Singular(_) => {
            let v = fl.field()?;
            let precision = fl.tol(POINT_PRECISION)?;
            let pts = singular_points(&v, precision).map_err(failed)?;
            r.push("field", field_value(&v));
            let total: usize = pts.iter().map(|p| p.multiplicity).sum();
            r.push(
                "points",
                Value::List(
                    pts.iter()
                        .map(|p| {
                            Value::record([
                                ("location", Value::text(point_text(p.location, &p.exact))),
                                ("exact", Value::Bool(p.exact.is_some())),
                                ("multiplicity", Value::Int(p.multiplicity as i64)),
                                (
                                    "eigenvalues",
                                    Value::List(vec![
                                        Value::Complex(p.eigenvalues.0),
                                        Value::Complex(p.eigenvalues.1),
                                    ]),
                                ),
                                ("classification", Value::text(p.classification.name())),
                                ("residual", Value::Real(p.residual)),
                            ])
                        })
                        .collect(),
                ),
            );
            r.push("total_multiplicity", Value::Int(total as i64));
        }
        Command::Hyperbolic(_) => {
            let v = fl.field()?;
            let tol = fl.tol(HYPERBOLIC_TOL)?;
            r.push("field", field_value(&v));
            let targets: Vec<(String, (Complex64, Complex64))> = match &fl.point {
                Some(src) => {
                    let (a, b) = parse_point(src)?;
                    let z = (
                        Complex64::new(to_f64(&a), 0.0),
                        Complex64::new(to_f64(&b), 0.0),
                    );
                    vec![(format!("({a}, {b})"), z)]
                }
                None => singular_points(&v, POINT_PRECISION)
                    .map_err(failed)?
                    .into_iter()
                    .map(|p| (point_text(p.location, &p.exact), p.location))
                    .collect(),
            };
            let mut all = true;
            let mut items = Vec::new();
            for (label, z) in targets {
                let h = hyperbolicity(&v, z, tol).map_err(failed)?;
                all &= h.classification == dweb::numflow::Classification::Hyperbolic;
                items.push(Value::record([
                    ("location", Value::text(label)),
                    (
                        "eigenvalues",
                        Value::List(vec![
                            Value::Complex(h.eigenvalues.0),
                            Value::Complex(h.eigenvalues.1),
                        ]),
                    ),
                    ("classification", Value::text(h.classification.name())),
                ]));
            }
            r.push("points", Value::List(items));
            return Ok(if all {
                r.verdict("hyperbolic", Exit::Ok)
            } else {
                r.verdict("not hyperbolic", Exit::Negative)
            });
        }
        Command::Flowcheck(_) => {
            let v = fl.field()?;
            let p = fl.curve()?;
            let tol = fl.tol(FLOW_TOL)?;
            let rep =
                invariance_flow_check(&v, &p, fl.trials, fl.time, tol, fl.seed).map_err(failed)?;
            r.push("field", field_value(&v));
            r.push("curve", Value::Poly(p));
            r.push("time", Value::Real(fl.time));
            r.push("tolerance", Value::Real(tol));
            r.push("seed", Value::Int(fl.seed as i64));
            r.push(
                "trials",
                Value::List(
                    rep.trials
                        .iter()
                        .map(|t| {
                            Value::record([
                                (
                                    "start",
                                    Value::List(vec![
                                        Value::Complex(t.start.0),
                                        Value::Complex(t.start.1),
                                    ]),
                                ),
                                ("worst_residual", Value::Real(t.worst_residual)),
                                ("reached", Value::Real(t.reached)),
                                ("diverged", Value::Bool(t.diverged)),
                                ("passed", Value::Bool(t.passed)),
                            ])
                        })
                        .collect(),
                ),
            );
            r.push("worst_residual", Value::Real(rep.worst_residual));
            return Ok(if rep.passed {
                r.verdict("stays on the curve", Exit::Ok)
            } else {
                r.verdict("leaves the curve", Exit::Negative)
            });
        }
        Command::Certify(_) => {
            let v = fl.field()?;
            let report = separatrix_report(&v, fl.degree_bound);
            r.push("field", field_value(&v));
            return Ok(certify_report(r, &report));
        }
    }
    Ok(r)
}

/// The verdict line and exit code of a separatrix report.
pub fn verdict_text(rep: &SeparatrixReport) -> (String, Exit) {
    let n = rep.degree_bound;
    match &rep.verdict {
        Verdict::Holds { point } => {
            let p = &rep.points[*point];
            (
                format!("hypothesis holds up to degree {n} over Q at {}", point_text(p.location, &p.exact)),
                Exit::Ok,
            )
        }
        Verdict::Fails { degree: 1 } => (
            "hypothesis fails at degree 1 (all singular points lie on invariant lines)".to_string(),
            Exit::Negative,
        ),
        Verdict::Fails { degree } => (
            format!("hypothesis fails at degree {degree} (all singular points lie on invariant curves of degree at most {degree})"),
            Exit::Negative,
        ),
        Verdict::Unresolved => (
            format!("unresolved up to degree {n}: every singular point lies on a certified or numeric invariant curve"),
            Exit::Negative,
        ),
        Verdict::NoSingularPoints => ("hypothesis fails: no isolated singular points".to_string(), Exit::Negative),
        Verdict::Degenerate => (
            "degenerate: infinitely many invariant curves (first-integral signal), no verdict".to_string(),
            Exit::Negative,
        ),
        Verdict::Incomplete => ("incomplete: elimination budget exhausted".to_string(), Exit::Budget),
    }
}

fn certify_report(mut r: Report, rep: &SeparatrixReport) -> Report {
    r.push("degree_bound", Value::Int(rep.degree_bound as i64));
    r.push("degenerate", Value::Bool(rep.degenerate));
    r.push("complete", Value::Bool(rep.complete));
    r.push(
        "curves",
        Value::List(rep.curves.iter().map(cert_value).collect()),
    );
    r.push(
        "numeric_witnesses",
        Value::List(
            rep.witnesses
                .iter()
                .map(|w| Value::text(witness_text(w)))
                .collect(),
        ),
    );
    r.push(
        "points",
        Value::List(
            rep.points
                .iter()
                .map(|p| {
                    Value::record([
                        ("location", Value::text(point_text(p.location, &p.exact))),
                        ("multiplicity", Value::Int(p.multiplicity as i64)),
                        (
                            "curves",
                            Value::List(
                                p.curves
                                    .iter()
                                    .map(|&i| Value::Poly(rep.curves[i].curve().clone()))
                                    .collect(),
                            ),
                        ),
                        ("unresolved", Value::Int(p.unresolved as i64)),
                    ])
                })
                .collect(),
        ),
    );
    r.push("unresolved", Value::Int(rep.unresolved as i64));
    let (text, exit) = verdict_text(rep);
    r.verdict(text, exit)
}
