use num_traits::Zero;

use super::{SymError, SymForm};
use crate::polycore::{
    eliminant, exact_div, gcd, radical, rational_roots, sylvester_det, Rational, UPoly,
};
use crate::QPoly;

/// A web: a nonzero form together with its primitivity and reducedness.
#[derive(Clone, Debug, PartialEq)]
pub struct Web {
    form: SymForm,
    primitive: bool,
    reduced: bool,
}

impl Web {
    pub fn new(form: SymForm) -> Result<Web, SymError> {
        if form.is_zero() {
            return Err(SymError::ZeroForm);
        }
        let primitive = form.content().is_constant();
        let reduced = is_squarefree(&form);
        Ok(Web {
            form,
            primitive,
            reduced,
        })
    }

    pub fn form(&self) -> &SymForm {
        &self.form
    }

    pub fn into_form(self) -> SymForm {
        self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }
}

/// `gcd(∂ω/∂dx, ∂ω/∂dy)` as a polynomial in base and fiber variables; by
/// Euler's relation it divides `ω` and carries every repeated fiber factor
/// with multiplicity lowered by one.
fn partials_gcd(form: &SymForm) -> QPoly {
    let px = form.fiber_derivation().expect("positive degree").to_poly();
    let py = form.fiber_partial_dy().expect("positive degree").to_poly();
    gcd(&px, &py)
}

fn involves_fiber(p: &QPoly, form: &SymForm) -> bool {
    let (dx, dy) = form.fiber();
    p.involves(dx) || p.involves(dy)
}

fn is_squarefree(form: &SymForm) -> bool {
    form.degree() < 2 || !involves_fiber(&partials_gcd(form), form)
}

fn divide_out_content(form: &SymForm) -> (QPoly, SymForm) {
    let c = form.content();
    let f = form.map_coeffs(|a| {
        exact_div(a, &c)
            .expect("nonzero content")
            .expect("content divides every coefficient")
    });
    (c, f)
}

fn form_from_poly(p: &QPoly, like: &SymForm) -> SymForm {
    SymForm::from_poly(p, like.fiber()).expect("fiber-homogeneous by construction")
}

/// Splits off the coefficient gcd: `a = content · web.form`.
pub fn primitive_part(a: &SymForm) -> Result<(QPoly, Web), SymError> {
    if a.is_zero() {
        return Err(SymError::ZeroForm);
    }
    let (c, f) = divide_out_content(a);
    Ok((
        c,
        Web {
            reduced: is_squarefree(&f),
            form: f,
            primitive: true,
        },
    ))
}

/// The squarefree part of the form as a binary form over the rational
/// functions in the base variables, made primitive.
pub fn reduce(w: &Web) -> Web {
    let form = w.form();
    if form.degree() < 2 {
        return primitive_part(form).expect("webs are nonzero").1;
    }
    let g = partials_gcd(form);
    let q = exact_div(&form.to_poly(), &g)
        .expect("nonzero gcd")
        .expect("partials gcd divides the form");
    let (_, f) = divide_out_content(&form_from_poly(&q, form));
    Web {
        form: f,
        primitive: true,
        reduced: true,
    }
}

/// Squarefree decomposition as a binary form: primitive squarefree webs
/// `w_k` with `form ~ prod w_k^⊠k` up to content.
pub fn squarefree_factors(w: &Web) -> Vec<(Web, usize)> {
    let form = w.form();
    // powers[k] = prod L^max(m - k, 0) over the distinct fiber factors L.
    let mut powers = vec![divide_out_content(form).1];
    while powers.last().unwrap().degree() > 0 {
        let p = powers.last().unwrap();
        let g = if p.degree() == 1 {
            QPoly::one()
        } else {
            partials_gcd(p)
        };
        let next = divide_out_content(&form_from_poly(&g, form)).1;
        powers.push(next);
    }
    let quotient = |a: &SymForm, b: &SymForm| -> SymForm {
        let q = exact_div(&a.to_poly(), &b.to_poly())
            .expect("nonzero divisor")
            .expect("chain divides");
        divide_out_content(&form_from_poly(&q, form)).1
    };
    // at_least[k] = product of factors with multiplicity > k.
    let at_least: Vec<SymForm> = powers
        .windows(2)
        .map(|pair| quotient(&pair[0], &pair[1]))
        .collect();
    let mut out = Vec::new();
    for k in 0..at_least.len() {
        let exact = match at_least.get(k + 1) {
            Some(next) => quotient(&at_least[k], next),
            None => at_least[k].clone(),
        };
        if exact.degree() > 0 {
            out.push((
                Web {
                    form: exact,
                    primitive: true,
                    reduced: true,
                },
                k + 1,
            ));
        }
    }
    out
}

/// Common zeros of a web's coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularLocus {
    pub coefficients: Vec<QPoly>,
    /// Polynomial in `x` vanishing at the `x`-coordinates of the locus.
    pub x_eliminant: Option<QPoly>,
    /// Polynomial in `y` vanishing at the `y`-coordinates of the locus.
    pub y_eliminant: Option<QPoly>,
    /// The points with rational coordinates, sorted.
    pub points: Vec<(Rational, Rational)>,
}

fn univariate_roots(p: &QPoly, var: &str) -> Vec<Rational> {
    let p = p.trimmed();
    if p.is_constant() {
        return Vec::new();
    }
    match UPoly::from_mpoly(&p, var) {
        Some(u) => rational_roots(&u)
            .roots
            .into_iter()
            .map(|(r, _)| r)
            .collect(),
        None => Vec::new(),
    }
}

/// Rational common zeros of polynomials in `x, y` with finitely many common
/// zeros; `None` when the eliminants degenerate.
pub fn rational_common_zeros(polys: &[QPoly]) -> Option<Vec<(Rational, Rational)>> {
    let ex = eliminant(polys, "y")?;
    let ey = eliminant(polys, "x")?;
    let xs = univariate_roots(&ex, "x");
    let ys = univariate_roots(&ey, "y");
    let mut out = Vec::new();
    for a in &xs {
        for b in &ys {
            let at = [("x", a.clone()), ("y", b.clone())];
            if polys
                .iter()
                .all(|p| p.eval_named(&at, |c| c.clone()).is_zero())
            {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Some(out)
}

pub fn singular_locus(w: &Web) -> SingularLocus {
    let coefficients: Vec<QPoly> = w.form().coeffs().to_vec();
    let x_eliminant = eliminant(&coefficients, "y");
    let y_eliminant = eliminant(&coefficients, "x");
    let points = rational_common_zeros(&coefficients).unwrap_or_default();
    SingularLocus {
        coefficients,
        x_eliminant,
        y_eliminant,
        points,
    }
}

/// `f1 g2 - f2 g1` for foliations `f1 dx + f2 dy` and `g1 dx + g2 dy`.
pub fn tang_foliations(a: &SymForm, b: &SymForm) -> Result<QPoly, SymError> {
    for f in [a, b] {
        if f.degree() != 1 {
            return Err(SymError::WrongDegree {
                expected: 1,
                found: f.degree(),
            });
        }
    }
    let d = &(a.coeff(0) * b.coeff(1)) - &(a.coeff(1) * b.coeff(0));
    if d.is_zero() {
        return Err(SymError::Associate);
    }
    Ok(d)
}

/// Where two webs share a direction.
#[derive(Clone, Debug, PartialEq)]
pub enum TangencyResult {
    /// Defining polynomial of the tangency locus; a constant means the webs
    /// are transverse everywhere.
    Locus(QPoly),
    /// The webs share this subweb, so they are tangent everywhere.
    CommonSubweb(Web),
}

impl TangencyResult {
    pub fn is_unit(&self) -> bool {
        matches!(self, TangencyResult::Locus(p) if p.is_constant())
    }
}

/// Binary-form resultant of the two forms in `(dx : dy)`, or their common
/// subweb when it vanishes identically.
pub fn tang_webs(a: &Web, b: &Web) -> TangencyResult {
    let res = sylvester_det(a.form().coeffs(), b.form().coeffs());
    if !res.is_zero() {
        return TangencyResult::Locus(res);
    }
    let g = gcd(&a.form().to_poly(), &b.form().to_poly());
    let (_, f) = divide_out_content(&form_from_poly(&g, a.form()));
    TangencyResult::CommonSubweb(Web {
        reduced: is_squarefree(&f),
        form: f,
        primitive: true,
    })
}

/// Discriminant of the binary form: the resultant of its two fiber
/// partials. Constant for foliations; zero when the form is not reduced.
pub fn discriminant(w: &Web) -> QPoly {
    let form = w.form();
    if form.degree() < 2 {
        return QPoly::one();
    }
    let px = form.fiber_derivation().expect("degree >= 2");
    let py = form.fiber_partial_dy().expect("degree >= 2");
    sylvester_det(px.coeffs(), py.coeffs())
}

/// The squarefree discriminant polynomial (zero if the discriminant is).
pub fn discriminant_locus(w: &Web) -> QPoly {
    let d = discriminant(w);
    if d.is_zero() {
        return d;
    }
    radical(&d).expect("nonzero")
}

/// `Res(ω, ∂ω/∂dx)` on the full coefficient sequences. Agrees with the
/// discriminant locus when the `dx^r` coefficient is not identically zero,
/// and degenerates to zero otherwise.
pub fn discriminant_via_fiber_derivation(w: &Web) -> QPoly {
    let form = w.form();
    if form.degree() < 2 {
        return QPoly::one();
    }
    let d = form.fiber_derivation().expect("degree >= 2");
    sylvester_det(form.coeffs(), d.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::qi;

    fn x() -> QPoly {
        QPoly::var("x")
    }
    fn y() -> QPoly {
        QPoly::var("y")
    }
    fn c(n: i64) -> QPoly {
        QPoly::from_int(n)
    }
    fn web(coeffs: Vec<QPoly>) -> Web {
        Web::new(SymForm::new(coeffs)).unwrap()
    }
    fn radial() -> SymForm {
        SymForm::linear(y(), -x())
    }

    #[test]
    fn primitive_part_examples() {
        let (cont, w) = primitive_part(&SymForm::linear(QPoly::zero(), x())).unwrap();
        assert_eq!(cont, x());
        assert_eq!(w.form(), &SymForm::dy());
        let (cont, w) = primitive_part(&SymForm::linear(&x() * &x(), &x() * &y())).unwrap();
        assert_eq!(cont, x());
        assert_eq!(w.form(), &SymForm::linear(x(), y()));
        let (cont, w) = primitive_part(&radial()).unwrap();
        assert_eq!(cont, c(1));
        assert_eq!(w.form(), &radial());
        assert!(w.is_primitive());
        assert_eq!(primitive_part(&SymForm::zero(2)), Err(SymError::ZeroForm));
    }

    #[test]
    fn singular_locus_examples() {
        let s = singular_locus(&Web::new(radial()).unwrap());
        assert_eq!(s.points, vec![(qi(0), qi(0))]);
        assert!(singular_locus(&Web::new(SymForm::dy()).unwrap())
            .points
            .is_empty());
        let a = &y().pow(2) * &(&y() - &c(1));
        let b = -(&x().pow(2) * &(&x() - &c(1)));
        let s = singular_locus(&web(vec![a, b]));
        let mut expect = Vec::new();
        for p in [0, 1] {
            for q in [0, 1] {
                expect.push((qi(p), qi(q)));
            }
        }
        assert_eq!(s.points, expect);
    }

    #[test]
    fn reduce_examples() {
        let dy2 = Web::new(SymForm::dy().box_pow(2)).unwrap();
        assert!(!dy2.is_reduced());
        assert_eq!(reduce(&dy2).form(), &SymForm::dy());
        let sq = Web::new(radial().box_pow(2)).unwrap();
        assert!(reduce(&sq).form().is_associate(&radial()));
        let dxdy = Web::new(SymForm::dx().box_product(&SymForm::dy())).unwrap();
        assert!(dxdy.is_reduced());
        assert_eq!(reduce(&dxdy).form(), dxdy.form());
    }

    #[test]
    fn tang_foliation_examples() {
        let d = tang_foliations(&SymForm::dy(), &SymForm::linear(-x(), c(1))).unwrap();
        assert_eq!(d, x());
        assert_eq!(
            tang_foliations(&SymForm::dx(), &SymForm::dy()).unwrap(),
            c(1)
        );
        let d = tang_foliations(&radial(), &SymForm::linear(x(), y())).unwrap();
        assert_eq!(d, &x() * &x() + &y() * &y());
        assert_eq!(
            tang_foliations(&radial(), &radial().scale(&c(3))),
            Err(SymError::Associate)
        );
    }

    #[test]
    fn tang_web_examples() {
        let dx = Web::new(SymForm::dx()).unwrap();
        let dy = Web::new(SymForm::dy()).unwrap();
        assert!(tang_webs(&dx, &dy).is_unit());
        let dxdy = Web::new(SymForm::dx().box_product(&SymForm::dy())).unwrap();
        match tang_webs(&dxdy, &dy) {
            TangencyResult::CommonSubweb(w) => assert_eq!(w.form(), &SymForm::dy()),
            other => panic!("expected a common subweb, got {other:?}"),
        }
        let w = web(vec![-x(), QPoly::zero(), c(1)]);
        assert_eq!(tang_webs(&w, &dx), TangencyResult::Locus(c(1)));
    }

    #[test]
    fn discriminant_examples() {
        let w = web(vec![-x(), QPoly::zero(), c(1)]);
        assert_eq!(discriminant(&w), x().scale(&qi(-4)));
        let dxdy = Web::new(SymForm::dx().box_product(&SymForm::dy())).unwrap();
        assert!(discriminant(&dxdy).is_constant());
        assert!(!discriminant(&dxdy).is_zero());
        let w = Web::new(radial().box_product(&SymForm::linear(x(), y()))).unwrap();
        let r2 = &x() * &x() + &y() * &y();
        assert_eq!(discriminant(&w), -(&r2 * &r2));
        assert_eq!(discriminant_locus(&w), r2);
        assert_eq!(discriminant(&Web::new(radial()).unwrap()), c(1));
    }

    #[test]
    fn fiber_derivation_route_degenerates_on_dx_dy() {
        let dxdy = Web::new(SymForm::dx().box_product(&SymForm::dy())).unwrap();
        assert!(discriminant_via_fiber_derivation(&dxdy).is_zero());
        let w = web(vec![-x(), QPoly::zero(), c(1)]);
        let d = discriminant_via_fiber_derivation(&w);
        assert_eq!(radical(&d).unwrap(), x());
    }

    #[test]
    fn squarefree_factors_reassemble() {
        let a = SymForm::linear(y(), -x());
        let b = SymForm::linear(c(1), x());
        let form = a
            .box_pow(3)
            .box_product(&b)
            .box_product(&SymForm::dy().box_pow(2));
        let f = squarefree_factors(&Web::new(form.clone()).unwrap());
        let mults: Vec<usize> = f.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        let back = f.iter().fold(SymForm::scalar(c(1)), |acc, (w, m)| {
            acc.box_product(&w.form().box_pow(*m as u32))
        });
        assert!(back.is_associate(&form));
    }
}
