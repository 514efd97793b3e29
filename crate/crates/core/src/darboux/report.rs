use num_complex::Complex64;
use num_traits::Zero;

use super::{
    eval_with_scale, invariant_curves_deg2, linear_invariant_curves, DarbouxCert, DEFAULT_BUDGET,
};
use crate::dvariety::VectorField;
use crate::numflow::singular_points;
use crate::polycore::{exact_div, gcd};
use crate::{CPoly, Rational};

/// Relative residual under which a numeric point counts as on a curve.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

const POINT_PRECISION: f64 = 1e-10;

/// One singular point and the invariant curves through it.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub location: (Complex64, Complex64),
    pub exact: Option<(Rational, Rational)>,
    pub multiplicity: usize,
    /// Indices into [`SeparatrixReport::curves`].
    pub curves: Vec<usize>,
    /// Numeric witnesses through the point plus unfollowed branches.
    pub unresolved: usize,
}

/// Conclusion about algebraic separatrices, always relative to the degree
/// bound and to curves defined over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// This singular point lies on no invariant curve of degree at most the
    /// bound.
    Holds { point: usize },
    /// Every singular point lies on a certified invariant curve; `degree` is
    /// the smallest bound at which that is already true.
    Fails { degree: u32 },
    /// No point is free of curves, and some are blocked only by numeric
    /// witnesses.
    Unresolved,
    /// The field has no isolated singular point in the affine plane.
    NoSingularPoints,
    /// Infinitely many invariant curves: a first-integral signal.
    Degenerate,
    /// The elimination budget ran out.
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct SeparatrixReport {
    pub degree_bound: u32,
    pub degenerate: bool,
    pub complete: bool,
    pub curves: Vec<DarbouxCert>,
    pub witnesses: Vec<CPoly>,
    pub points: Vec<PointReport>,
    pub unresolved: usize,
    pub verdict: Verdict,
}

/// Singular points against invariant curves of degree at most `bound`
/// (clamped to 2).
pub fn separatrix_report(v: &VectorField, bound: u32) -> SeparatrixReport {
    let bound = bound.min(2);
    let mut report = SeparatrixReport {
        degree_bound: bound,
        degenerate: false,
        complete: true,
        curves: Vec::new(),
        witnesses: Vec::new(),
        points: Vec::new(),
        unresolved: 0,
        verdict: Verdict::Degenerate,
    };
    let mut stuck = 0;
    if bound >= 1 {
        let lin = linear_invariant_curves(v);
        if lin.degenerate {
            report.degenerate = true;
            return report;
        }
        report.complete &= lin.complete;
        stuck += lin.stuck;
        report.curves.extend(lin.curves);
        report.witnesses.extend(lin.witnesses);
    }
    if bound >= 2 {
        let con = invariant_curves_deg2(v, DEFAULT_BUDGET);
        if con.degenerate {
            report.degenerate = true;
            return report;
        }
        report.complete &= con.complete;
        stuck += con.stuck;
        report.curves.extend(con.curves);
        report.witnesses.extend(con.witnesses);
    }
    report.unresolved = report.witnesses.len() + stuck;

    // Non-isolated zeros: locate the isolated ones on the reduced field.
    let h = gcd(v.f(), v.g());
    let points = if h.is_constant() {
        singular_points(v, POINT_PRECISION)
    } else {
        let div = |p| exact_div(p, &h).ok().flatten().expect("gcd divides");
        match VectorField::new(div(v.f()), div(v.g())) {
            Ok(r) => singular_points(&r, POINT_PRECISION),
            Err(_) => Ok(Vec::new()),
        }
    };
    let points = match points {
        Ok(p) => p,
        Err(_) => {
            report.complete = false;
            report.verdict = Verdict::Incomplete;
            return report;
        }
    };
    for sp in points {
        let (px, py) = sp.location;
        let curves = report
            .curves
            .iter()
            .enumerate()
            .filter(|(_, c)| match &sp.exact {
                Some((a, b)) => c
                    .curve()
                    .eval_named(&[("x", a.clone()), ("y", b.clone())], Clone::clone)
                    .is_zero(),
                None => {
                    let cp: CPoly = c.curve().map_coeffs(crate::Scalar::to_complex);
                    on_curve(&cp, px, py)
                }
            })
            .map(|(i, _)| i)
            .collect();
        let through = report
            .witnesses
            .iter()
            .filter(|w| on_curve(w, px, py))
            .count();
        report.points.push(PointReport {
            location: sp.location,
            exact: sp.exact,
            multiplicity: sp.multiplicity,
            curves,
            unresolved: through + stuck,
        });
    }
    report.verdict = verdict(&report);
    report
}

fn on_curve(p: &CPoly, x: Complex64, y: Complex64) -> bool {
    let (val, scale) = eval_with_scale(p, x, y);
    val.norm() <= MEMBERSHIP_TOL * scale.max(1.0)
}

fn verdict(r: &SeparatrixReport) -> Verdict {
    if r.degenerate {
        return Verdict::Degenerate;
    }
    if !r.complete {
        return Verdict::Incomplete;
    }
    if r.points.is_empty() {
        return Verdict::NoSingularPoints;
    }
    if let Some(i) = r
        .points
        .iter()
        .position(|p| p.curves.is_empty() && p.unresolved == 0)
    {
        return Verdict::Holds { point: i };
    }
    if r.points.iter().any(|p| p.curves.is_empty()) {
        return Verdict::Unresolved;
    }
    let degree = r
        .points
        .iter()
        .map(|p| {
            p.curves
                .iter()
                .map(|&i| r.curves[i].degree())
                .min()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Verdict::Fails { degree }
}
