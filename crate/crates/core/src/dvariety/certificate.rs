use super::{apply_derivation, lie_derivative, FieldError, VectorField};
use crate::polycore::{exact_div, radical, Rational, UPoly};
use crate::symweb::{SymForm, Web};
use crate::QPoly;

/// What a cofactor certificate is about.
#[derive(Clone, Debug, PartialEq)]
pub enum Subject {
    /// An invariant web form: `L_v(ω) = h ω`.
    Form(SymForm),
    /// An invariant curve `P = 0`: `δ_v(P) = k P`.
    Curve(QPoly),
    /// A hypersurface of a product, under the block derivation.
    Hypersurface(QPoly),
}

/// An exactly verified cofactor identity. Only constructed after the
/// residual has been checked to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct CofactorCert {
    subject: Subject,
    cofactor: QPoly,
}

impl CofactorCert {
    pub(crate) fn checked(subject: Subject, cofactor: QPoly, residual_zero: bool) -> Option<Self> {
        residual_zero.then_some(CofactorCert { subject, cofactor })
    }

    pub fn subject(&self) -> &Subject {
        &self.subject
    }

    pub fn cofactor(&self) -> &QPoly {
        &self.cofactor
    }

    /// The curve or hypersurface polynomial, if the subject is one.
    pub fn polynomial(&self) -> Option<&QPoly> {
        match &self.subject {
            Subject::Curve(p) | Subject::Hypersurface(p) => Some(p),
            Subject::Form(_) => None,
        }
    }

    /// Re-runs the residual check against `v` from scratch.
    pub fn recheck(&self, v: &VectorField) -> bool {
        match &self.subject {
            Subject::Form(w) => lie_derivative(v, w) == w.scale(&self.cofactor),
            Subject::Curve(p) => apply_derivation(v, p) == p * &self.cofactor,
            Subject::Hypersurface(_) => false,
        }
    }
}

/// Certifies `L_v(ω) = h ω` for the web's form, deciding proportionality
/// by the 2×2 minors before any division.
pub fn invariance_certificate(v: &VectorField, w: &Web) -> Option<CofactorCert> {
    let form = w.form();
    let l = lie_derivative(v, form);
    let (a, b) = (form.coeffs(), l.coeffs());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return None;
            }
        }
    }
    let i = a.iter().position(|c| !c.is_zero())?;
    let h = exact_div(&b[i], &a[i]).ok()??;
    let ok = l == form.scale(&h);
    CofactorCert::checked(Subject::Form(form.clone()), h, ok)
}

/// Cofactor of the squarefree part of `P`, if `P = 0` is invariant.
pub fn is_invariant_curve(v: &VectorField, p: &QPoly) -> Result<Option<CofactorCert>, FieldError> {
    if p.is_constant() {
        return Err(FieldError::ConstantPolynomial);
    }
    let p = radical(p)?;
    let dp = apply_derivation(v, &p);
    let Some(k) = exact_div(&dp, &p)? else {
        return Ok(None);
    };
    let ok = dp == &k * &p;
    Ok(CofactorCert::checked(Subject::Curve(p), k, ok))
}

/// Whether `φ = P/Q` maps `v` to `a(t) ∂/∂t`:
/// `δ_v(P) Q - P δ_v(Q) = a(P/Q) Q^2` after clearing denominators.
pub fn check_rational_factor(
    v: &VectorField,
    phi: (&QPoly, &QPoly),
    a: &UPoly<Rational>,
) -> Result<bool, FieldError> {
    let (p, q) = phi;
    if q.is_zero() {
        return Err(FieldError::ZeroDenominator);
    }
    let n = a.degree().unwrap_or(0) as u32;
    let m = n.max(2);
    let lhs = &wronskian(v, p, q) * &q.pow(m - 2);
    let rhs = a
        .coeffs()
        .iter()
        .enumerate()
        .fold(QPoly::zero(), |acc, (k, c)| {
            let k = k as u32;
            &acc + &(&p.pow(k) * &q.pow(m - k)).scale(c)
        });
    Ok(lhs == rhs)
}

/// Whether `P/Q` is constant along the flow.
pub fn is_first_integral(v: &VectorField, p: &QPoly, q: &QPoly) -> Result<bool, FieldError> {
    if q.is_zero() {
        return Err(FieldError::ZeroDenominator);
    }
    Ok(wronskian(v, p, q).is_zero())
}

/// `δ_v(P) Q - P δ_v(Q)`.
fn wronskian(v: &VectorField, p: &QPoly, q: &QPoly) -> QPoly {
    &(&apply_derivation(v, p) * q) - &(p * &apply_derivation(v, q))
}

#[cfg(test)]
mod tests {
    use super::super::foliation_of;
    use super::super::tests::{c, cubic, radial, rotation, x, y};
    use super::*;
    use crate::polycore::qi;

    #[test]
    fn web_certificates() {
        let w = Web::new(SymForm::linear(y(), -x())).unwrap();
        let cert = invariance_certificate(&radial(), &w).unwrap();
        assert_eq!(cert.cofactor(), &c(2));
        assert!(cert.recheck(&radial()));
        let cert = invariance_certificate(&rotation(), &w).unwrap();
        assert!(cert.cofactor().is_zero());
        let v = VectorField::new(c(1), QPoly::zero()).unwrap();
        let w = Web::new(SymForm::linear(c(1), x())).unwrap();
        assert!(invariance_certificate(&v, &w).is_none());
    }

    #[test]
    fn curve_certificates() {
        let v = cubic();
        let cert = is_invariant_curve(&v, &x()).unwrap().unwrap();
        assert_eq!(cert.cofactor(), &(&x().pow(2) - &x()));
        assert!(is_invariant_curve(&v, &(&x() - &c(2))).unwrap().is_none());
        let circle = &x().pow(2) + &y().pow(2);
        let cert = is_invariant_curve(&rotation(), &circle).unwrap().unwrap();
        assert!(cert.cofactor().is_zero());
        assert_eq!(
            is_invariant_curve(&v, &c(3)),
            Err(FieldError::ConstantPolynomial)
        );
        // Squares are reduced before dividing.
        let cert = is_invariant_curve(&v, &x().pow(2)).unwrap().unwrap();
        assert_eq!(cert.polynomial(), Some(&x()));
    }

    #[test]
    fn rational_factors() {
        let v = cubic();
        let target = UPoly::from_ints(&[0, 0, -1, 1]);
        assert!(check_rational_factor(&v, (&x(), &c(1)), &target).unwrap());
        assert!(check_rational_factor(&v, (&y(), &c(1)), &target).unwrap());
        for coeffs in [[0, 1, 0, 0], [0, 0, 0, 1], [1, -1, 2, 1], [0, 0, 0, 0]] {
            let a = UPoly::from_ints(&coeffs);
            assert!(!check_rational_factor(&rotation(), (&x(), &c(1)), &a).unwrap());
        }
        // 1/x under the radial field: δ(1/x) = -1/x, so a(t) = -t.
        let a = UPoly::new(vec![qi(0), qi(-1)]);
        assert!(check_rational_factor(&radial(), (&c(1), &x()), &a).unwrap());
        assert_eq!(
            check_rational_factor(&radial(), (&x(), &QPoly::zero()), &a),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn first_integrals() {
        assert!(is_first_integral(&radial(), &y(), &x()).unwrap());
        let circle = &x().pow(2) + &y().pow(2);
        assert!(is_first_integral(&rotation(), &circle, &c(1)).unwrap());
        assert!(!is_first_integral(&cubic(), &x(), &y()).unwrap());
    }

    #[test]
    fn tangent_foliation_is_invariant() {
        for v in [cubic(), rotation(), radial()] {
            let w = foliation_of(&v).unwrap();
            let cert = invariance_certificate(&v, &w).unwrap();
            assert!(cert.recheck(&v));
        }
    }
}
