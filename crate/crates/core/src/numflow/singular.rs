use num_complex::Complex64;
use num_traits::Zero;

use super::{FlowError, NumField, NumPoly, ZERO_TOL};
use crate::dvariety::VectorField;
use crate::polycore::{
    gcd, numroots::complex_roots, q, qi, rational_roots, resultant, squarefree_decomposition,
    Rational, UPoly,
};
use crate::scalar::rational_to_f64;
use crate::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Nonzero eigenvalues whose ratio is off the closed negative real axis.
    Hyperbolic,
    /// Nonzero eigenvalues with ratio in (or too close to) the negative reals.
    ResonantRatio,
    /// An eigenvalue is (numerically) zero.
    Degenerate,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Hyperbolic => "hyperbolic",
            Classification::ResonantRatio => "resonant-ratio",
            Classification::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyperbolicity {
    pub eigenvalues: (Complex64, Complex64),
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPointNumeric {
    pub location: (Complex64, Complex64),
    /// Exact coordinates when the point is rational.
    pub exact: Option<(Rational, Rational)>,
    pub multiplicity: usize,
    pub eigenvalues: (Complex64, Complex64),
    pub classification: Classification,
    /// Largest relative residual of `f`, `g` at the location.
    pub residual: f64,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn eigenvalues(j: [[Complex64; 2]; 2]) -> (Complex64, Complex64) {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    // Take the larger root directly and the other from the product.
    let big = if (tr + disc).norm() >= (tr - disc).norm() {
        (tr + disc) / 2.0
    } else {
        (tr - disc) / 2.0
    };
    let small = if big.norm() > 0.0 { det / big } else { c(0.0) };
    (big, small)
}

fn classify(j: [[Complex64; 2]; 2], tol: f64) -> Hyperbolicity {
    let (l, m) = eigenvalues(j);
    let scale = j.iter().flatten().map(|a| a.norm()).fold(1.0, f64::max);
    let classification = if l.norm().min(m.norm()) <= tol * scale {
        Classification::Degenerate
    } else {
        let r = l / m;
        let dist = if r.re <= 0.0 { r.im.abs() } else { r.norm() };
        if dist <= tol {
            Classification::ResonantRatio
        } else {
            Classification::Hyperbolic
        }
    };
    Hyperbolicity {
        eigenvalues: (l, m),
        classification,
    }
}

/// Eigenvalues of the linear part at a zero `p` of `v`, and the verdict.
pub fn hyperbolicity(
    v: &VectorField,
    p: (Complex64, Complex64),
    tol: f64,
) -> Result<Hyperbolicity, FlowError> {
    let nf = NumField::new(v)?;
    let z = [p.0, p.1];
    let r = nf.residual(z);
    if r > ZERO_TOL {
        return Err(FlowError::NotAZero(r));
    }
    Ok(classify(nf.jacobian(z), tol))
}

/// Shears `x = u - s y` tried in turn until the projection to `u` separates
/// the singular points.
fn shears() -> Vec<Rational> {
    vec![
        qi(0),
        qi(1),
        qi(-1),
        qi(2),
        qi(-2),
        qi(3),
        q(1, 2),
        qi(-3),
        qi(5),
        q(-7, 3),
    ]
}

/// All complex zeros of `(f, g)` with multiplicities, each with relative
/// residual at most `precision`.
pub fn singular_points(
    v: &VectorField,
    precision: f64,
) -> Result<Vec<SingularPointNumeric>, FlowError> {
    let nf = NumField::new(v)?;
    let nonzero_constant = |p: &QPoly| p.is_constant() && !p.is_zero();
    if nonzero_constant(v.f()) || nonzero_constant(v.g()) {
        return Ok(Vec::new());
    }
    let h = gcd(v.f(), v.g());
    if !h.is_constant() {
        return Err(FlowError::NonFinite(h.to_string()));
    }
    for s in shears() {
        if let Some(points) = attempt(v, &nf, &s, precision) {
            return Ok(points);
        }
    }
    Err(FlowError::Precision)
}

fn sheared(p: &QPoly, s: &Rational) -> QPoly {
    let xs = &QPoly::var("u") - &QPoly::var("y").scale(s);
    p.substitute("x", &xs)
}

/// The slice of a sheared polynomial at a rational `u`, as a polynomial in `y`.
fn exact_slice(p: &QPoly, u: &Rational) -> UPoly<Rational> {
    let at = p.substitute("u", &QPoly::constant(u.clone()));
    UPoly::from_mpoly(&at, "y").expect("only y remains")
}

fn attempt(
    v: &VectorField,
    nf: &NumField,
    s: &Rational,
    precision: f64,
) -> Option<Vec<SingularPointNumeric>> {
    let (ft, gt) = (sheared(v.f(), s), sheared(v.g(), s));
    let e = resultant(&ft, &gt, "y").ok()?;
    if e.is_zero() {
        return None;
    }
    let e = UPoly::from_mpoly(&e, "u")?;
    let (nft, ngt) = (
        NumPoly::in_vars(&ft, "u", "y").ok()?,
        NumPoly::in_vars(&gt, "u", "y").ok()?,
    );
    let mut out: Vec<SingularPointNumeric> = Vec::new();
    for (i, part) in squarefree_decomposition(&e).iter().enumerate() {
        let multiplicity = i + 1;
        let mut rest = part.clone();
        for (r, _) in rational_roots(part).roots {
            let lin = UPoly::new(vec![-r.clone(), Rational::from_integer(1.into())]);
            rest = rest.div_rem(&lin).0;
            let (x0, y0) = exact_point(v, &ft, &gt, &r, s)?;
            let z = [c(rational_to_f64(&x0)), c(rational_to_f64(&y0))];
            out.push(point(nf, z, Some((x0, y0)), multiplicity));
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        let coeffs: Vec<Complex64> = rest
            .coeffs()
            .iter()
            .map(|a| c(rational_to_f64(a)))
            .collect();
        for u in complex_roots(&coeffs) {
            let y = numeric_y(&nft, &ngt, u)?;
            let z = polish(nf, [u - y * rational_to_f64(s), y]);
            let p = point(nf, z, None, multiplicity);
            if p.residual > precision {
                return None;
            }
            out.push(p);
        }
    }
    // The projection must separate points.
    for (i, a) in out.iter().enumerate() {
        for b in &out[i + 1..] {
            let d = (a.location.0 - b.location.0).norm() + (a.location.1 - b.location.1).norm();
            if d <= 1e-8 * (1.0 + a.location.0.norm() + a.location.1.norm()) {
                return None;
            }
        }
    }
    out.sort_by(|a, b| {
        let key = |p: &SingularPointNumeric| {
            [
                p.location.0.re,
                p.location.0.im,
                p.location.1.re,
                p.location.1.im,
            ]
        };
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Some(out)
}

fn exact_point(
    v: &VectorField,
    ft: &QPoly,
    gt: &QPoly,
    u: &Rational,
    s: &Rational,
) -> Option<(Rational, Rational)> {
    let (a, b) = (exact_slice(ft, u), exact_slice(gt, u));
    let g = a.gcd(&b);
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    let sq = g.div_rem(&g.gcd(&g.derivative())).0;
    if sq.degree() != Some(1) {
        return None;
    }
    let y0 = -sq.coeff(0) / sq.coeff(1);
    let x0 = u - s * &y0;
    let at = [("x", x0.clone()), ("y", y0.clone())];
    let zero = |p: &QPoly| p.eval_named(&at, |c| c.clone()).is_zero();
    (zero(v.f()) && zero(v.g())).then_some((x0, y0))
}

fn trimmed(mut c: Vec<Complex64>) -> Vec<Complex64> {
    let top = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
    while c.last().is_some_and(|a| a.norm() <= 1e-12 * top) {
        c.pop();
    }
    c
}

/// The unique `y` over a numeric root `u` of the eliminant.
fn numeric_y(ft: &NumPoly, gt: &NumPoly, u: Complex64) -> Option<Complex64> {
    let (a, b) = (trimmed(ft.slice_in_y(u)), trimmed(gt.slice_in_y(u)));
    let (solve, other) = match (a.len(), b.len()) {
        (0, 0) => return None,
        (0, _) => (gt, ft),
        (_, 0) => (ft, gt),
        (la, lb) if la <= lb && la > 1 => (ft, gt),
        (_, lb) if lb > 1 => (gt, ft),
        _ => (ft, gt),
    };
    let cands = complex_roots(&trimmed(solve.slice_in_y(u)));
    let scored: Vec<(Complex64, f64)> = cands
        .iter()
        .map(|&y| (y, other.relative_residual(u, y)))
        .collect();
    let &(best, r) = scored.iter().min_by(|p, q| p.1.total_cmp(&q.1))?;
    if r > 1e-6 {
        return None;
    }
    let ambiguous = scored
        .iter()
        .any(|&(y, ry)| ry <= 1e-6 && (y - best).norm() > 1e-6 * (1.0 + best.norm()));
    (!ambiguous).then_some(best)
}

/// Newton's method on `(f, g)`, keeping only improving steps.
fn polish(nf: &NumField, mut z: [Complex64; 2]) -> [Complex64; 2] {
    let mut res = nf.residual(z);
    for _ in 0..40 {
        let [f0, f1] = nf.eval(z);
        let [[a, b], [cc, d]] = nf.jacobian(z);
        let det = a * d - b * cc;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (-f0 * d + b * f1) / det;
        let dy = (-a * f1 + cc * f0) / det;
        let next = [z[0] + dx, z[1] + dy];
        let r = nf.residual(next);
        // Also stops on NaN.
        if r.is_nan() || r >= res {
            break;
        }
        z = next;
        res = r;
        if dx.norm() + dy.norm() <= 1e-16 * (1.0 + z[0].norm() + z[1].norm()) {
            break;
        }
    }
    z
}

fn point(
    nf: &NumField,
    z: [Complex64; 2],
    exact: Option<(Rational, Rational)>,
    multiplicity: usize,
) -> SingularPointNumeric {
    let h = classify(nf.jacobian(z), super::HYPERBOLIC_TOL);
    let residual = if exact.is_some() { 0.0 } else { nf.residual(z) };
    SingularPointNumeric {
        location: (z[0], z[1]),
        exact,
        multiplicity,
        eigenvalues: h.eigenvalues,
        classification: h.classification,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::super::HYPERBOLIC_TOL;
    use super::*;

    fn x() -> QPoly {
        QPoly::var("x")
    }
    fn y() -> QPoly {
        QPoly::var("y")
    }
    fn cubic() -> VectorField {
        let one = QPoly::one();
        VectorField::new(&x().pow(2) * &(&x() - &one), &y().pow(2) * &(&y() - &one)).unwrap()
    }

    #[test]
    fn cubic_field_points() {
        let pts = singular_points(&cubic(), 1e-10).unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts.iter().map(|p| p.multiplicity).sum::<usize>(), 9);
        let at = |a: i64, b: i64| {
            pts.iter()
                .find(|p| p.exact == Some((qi(a), qi(b))))
                .unwrap()
        };
        assert_eq!(at(0, 0).multiplicity, 4);
        assert_eq!(at(1, 1).multiplicity, 1);
        assert_eq!(at(1, 1).classification, Classification::Hyperbolic);
        assert_eq!(at(0, 0).classification, Classification::Degenerate);
    }

    #[test]
    fn simple_fields() {
        let rot = VectorField::new(y(), -x()).unwrap();
        let pts = singular_points(&rot, 1e-10).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 1);
        assert_eq!(pts[0].exact, Some((qi(0), qi(0))));
        let constant = VectorField::new(QPoly::one(), QPoly::zero()).unwrap();
        assert!(singular_points(&constant, 1e-10).unwrap().is_empty());
        let shared = VectorField::new(&x() * &y(), x()).unwrap();
        assert!(matches!(
            singular_points(&shared, 1e-10),
            Err(FlowError::NonFinite(_))
        ));
    }

    #[test]
    fn irrational_points() {
        // x^2 = 2, y = x: two real irrational points.
        let v = VectorField::new(&x().pow(2) - &QPoly::from_int(2), &y() - &x()).unwrap();
        let pts = singular_points(&v, 1e-12).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!((p.location.0.re.abs() - 2f64.sqrt()).abs() < 1e-12);
            assert!((p.location.0 - p.location.1).norm() < 1e-12);
            assert!(p.exact.is_none());
        }
        // Points sharing an x-coordinate need a shear: x^2 + y^2 = 5, x y = 2.
        let v = VectorField::new(
            &(&x().pow(2) + &y().pow(2)) - &QPoly::from_int(5),
            &(&x() * &y()) - &QPoly::from_int(2),
        )
        .unwrap();
        let pts = singular_points(&v, 1e-12).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| p.exact.is_some()));
    }

    #[test]
    fn classification_examples() {
        let saddle = VectorField::new(x(), -y()).unwrap();
        let h = hyperbolicity(&saddle, (c(0.0), c(0.0)), HYPERBOLIC_TOL).unwrap();
        assert_eq!(h.classification, Classification::ResonantRatio);
        let h = hyperbolicity(&cubic(), (c(1.0), c(1.0)), HYPERBOLIC_TOL).unwrap();
        assert_eq!(h.classification, Classification::Hyperbolic);
        assert!((h.eigenvalues.0 - c(1.0)).norm() < 1e-12);
        assert!((h.eigenvalues.1 - c(1.0)).norm() < 1e-12);
        let h = hyperbolicity(&cubic(), (c(0.0), c(0.0)), HYPERBOLIC_TOL).unwrap();
        assert_eq!(h.classification, Classification::Degenerate);
        assert!(matches!(
            hyperbolicity(&cubic(), (c(0.5), c(0.0)), HYPERBOLIC_TOL),
            Err(FlowError::NotAZero(_))
        ));
        // Rotation: eigenvalues ±i, ratio -1.
        let rot = VectorField::new(y(), -x()).unwrap();
        let h = hyperbolicity(&rot, (c(0.0), c(0.0)), HYPERBOLIC_TOL).unwrap();
        assert_eq!(h.classification, Classification::ResonantRatio);
    }
}
