//! Planar vector fields as derivations, their Lie derivative on symmetric
//! forms, Riccati projectivization, product fields and exact invariance
//! certificates.

mod certificate;
mod product;
mod projective;

use thiserror::Error;

use num_traits::Signed;

use crate::polycore::{qi, PolyError};
use crate::symweb::{primitive_part, SymForm, Web};
use crate::QPoly;

pub use certificate::{
    check_rational_factor, invariance_certificate, is_first_integral, is_invariant_curve,
    CofactorCert, Subject,
};
pub use product::{
    is_invariant_graph, product_field, product_hypersurface_invariant, ProductField,
};
pub use projective::{divisor_chart1, projectivize, ProjectivizedField, Riccati};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("the zero vector field")]
    ZeroField,
    #[error("expected a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("graph equations are not solved for distinct variables")]
    NotTriangular,
    #[error("a product field needs at least one block")]
    NoBlocks,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `f ∂/∂x + g ∂/∂y` with polynomial components in `x, y`.
///
/// Components may carry extra variables, which then act as parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    f: QPoly,
    g: QPoly,
}

impl VectorField {
    pub fn new(f: QPoly, g: QPoly) -> Result<Self, FieldError> {
        if f.is_zero() && g.is_zero() {
            return Err(FieldError::ZeroField);
        }
        Ok(VectorField { f, g })
    }

    /// Like [`VectorField::new`] but admits the zero field.
    pub fn new_unchecked(f: QPoly, g: QPoly) -> Self {
        VectorField { f, g }
    }

    pub fn f(&self) -> &QPoly {
        &self.f
    }

    pub fn g(&self) -> &QPoly {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// Maximum total degree of the components.
    pub fn degree(&self) -> u32 {
        self.f.total_degree().max(self.g.total_degree())
    }

    /// Jacobian `[[f_x, f_y], [g_x, g_y]]`.
    pub fn jacobian(&self) -> [[QPoly; 2]; 2] {
        [
            [self.f.partial("x"), self.f.partial("y")],
            [self.g.partial("x"), self.g.partial("y")],
        ]
    }
}

/// `δ_v(p) = f ∂p/∂x + g ∂p/∂y`.
pub fn apply_derivation(v: &VectorField, p: &QPoly) -> QPoly {
    &(&v.f * &p.partial("x")) + &(&v.g * &p.partial("y"))
}

/// The degree-0 derivation of the symmetric algebra extending `δ_v` with
/// `L_v(dx) = f_x dx + f_y dy` and `L_v(dy) = g_x dx + g_y dy`.
pub fn lie_derivative(v: &VectorField, a: &SymForm) -> SymForm {
    let r = a.degree();
    let [[fx, fy], [gx, gy]] = v.jacobian();
    let mut out: Vec<QPoly> = a.coeffs().iter().map(|c| apply_derivation(v, c)).collect();
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // c dx^(r-i) dy^i: the dx factors contribute (r-i) L(dx) dx^(r-i-1) dy^i.
        if i < r {
            let k = c.scale(&qi((r - i) as i64));
            out[i] = &out[i] + &(&k * &fx);
            out[i + 1] = &out[i + 1] + &(&k * &fy);
        }
        if i > 0 {
            let k = c.scale(&qi(i as i64));
            out[i - 1] = &out[i - 1] + &(&k * &gx);
            out[i] = &out[i] + &(&k * &gy);
        }
    }
    SymForm::with_fiber(out, a.fiber())
}

/// The foliation tangent to `v`: the primitive part of `g dx - f dy`,
/// signed so that its first nonzero coefficient has a positive leading
/// coefficient.
pub fn foliation_of(v: &VectorField) -> Result<Web, FieldError> {
    if v.is_zero() {
        return Err(FieldError::ZeroField);
    }
    let form = SymForm::linear(v.g.clone(), -&v.f);
    let (_, w) = primitive_part(&form).expect("nonzero field gives a nonzero form");
    let lead = w
        .form()
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero");
    if lead.leading_coeff().is_negative() {
        let flipped = w.form().map_coeffs(|c| -c);
        return Ok(Web::new(flipped).expect("nonzero"));
    }
    Ok(w)
}
