//! Floating-point companion: numeric singular points, hyperbolicity,
//! complex-state flow integration and flow-based invariance checks.

mod check;
mod integrate;
mod singular;

use num_complex::Complex64;
use thiserror::Error;

use crate::scalar::rational_to_f64;
use crate::QPoly;

pub use check::{invariance_flow_check, FlowCheckReport, TrialResult};
pub use integrate::{flow, Trajectory};
pub use singular::{
    hyperbolicity, singular_points, Classification, Hyperbolicity, SingularPointNumeric,
};

/// Default band around the closed negative real axis (and around zero for
/// eigenvalues) inside which a singularity is not called hyperbolic.
pub const HYPERBOLIC_TOL: f64 = 1e-9;

/// Relative residual under which a numeric point counts as a zero of a
/// polynomial.
pub const ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("components share the factor {0}; the zero set is not finite")]
    NonFinite(String),
    #[error("polynomial involves variables other than x, y")]
    ExtraVariables,
    #[error("point is not a zero of the field (relative residual {0:e})")]
    NotAZero(f64),
    #[error("could not separate singular points to the requested precision")]
    Precision,
    #[error("trajectory diverged at t = {0}")]
    Divergence(f64),
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("expected a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("no numeric point found on the curve")]
    NoPointOnCurve,
}

/// A polynomial in two named variables compiled for complex evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly {
    terms: Vec<(u32, u32, Complex64)>,
}

impl NumPoly {
    pub fn new(p: &QPoly) -> Result<Self, FlowError> {
        Self::in_vars(p, "x", "y")
    }

    pub fn in_vars(p: &QPoly, a: &str, b: &str) -> Result<Self, FlowError> {
        if p.used_vars().iter().any(|v| v != a && v != b) {
            return Err(FlowError::ExtraVariables);
        }
        let (ia, ib) = (p.var_index(a), p.var_index(b));
        let terms = p
            .terms()
            .map(|(m, c)| {
                let e = m.exponents();
                let ea = ia.map_or(0, |i| e[i]);
                let eb = ib.map_or(0, |i| e[i]);
                (ea, eb, Complex64::new(rational_to_f64(c), 0.0))
            })
            .collect();
        Ok(NumPoly { terms })
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.eval_scaled(x, y).0
    }

    /// Value and the bound `sum |c| |x|^i |y|^j`.
    pub fn eval_scaled(&self, x: Complex64, y: Complex64) -> (Complex64, f64) {
        let (rx, ry) = (x.norm(), y.norm());
        let mut v = Complex64::new(0.0, 0.0);
        let mut s = 0.0;
        for &(i, j, c) in &self.terms {
            v += c * x.powu(i) * y.powu(j);
            s += c.norm() * rx.powi(i as i32) * ry.powi(j as i32);
        }
        (v, s)
    }

    /// `|p| / (1 + sum |c| |x|^i |y|^j)`.
    pub fn relative_residual(&self, x: Complex64, y: Complex64) -> f64 {
        let (v, s) = self.eval_scaled(x, y);
        v.norm() / (1.0 + s)
    }

    pub fn partial_x(&self) -> NumPoly {
        NumPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.0 > 0)
                .map(|&(i, j, c)| (i - 1, j, c * i as f64))
                .collect(),
        }
    }

    pub fn partial_y(&self) -> NumPoly {
        NumPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.1 > 0)
                .map(|&(i, j, c)| (i, j - 1, c * j as f64))
                .collect(),
        }
    }

    /// Ascending coefficients in the second variable with the first fixed.
    pub fn slice_in_y(&self, x: Complex64) -> Vec<Complex64> {
        let n = self.terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for &(i, j, c) in &self.terms {
            out[j as usize] += c * x.powu(i);
        }
        out
    }

    /// Ascending coefficients in the first variable with the second fixed.
    pub fn slice_in_x(&self, y: Complex64) -> Vec<Complex64> {
        let n = self.terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for &(i, j, c) in &self.terms {
            out[i as usize] += c * y.powu(j);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0)
    }
}

/// The field `(f, g)` compiled for complex evaluation, with its Jacobian.
#[derive(Clone, Debug)]
pub(crate) struct NumField {
    pub f: NumPoly,
    pub g: NumPoly,
    pub jac: [[NumPoly; 2]; 2],
}

impl NumField {
    pub fn new(v: &crate::dvariety::VectorField) -> Result<Self, FlowError> {
        let f = NumPoly::new(v.f())?;
        let g = NumPoly::new(v.g())?;
        let jac = [
            [f.partial_x(), f.partial_y()],
            [g.partial_x(), g.partial_y()],
        ];
        Ok(NumField { f, g, jac })
    }

    pub fn eval(&self, z: [Complex64; 2]) -> [Complex64; 2] {
        [self.f.eval(z[0], z[1]), self.g.eval(z[0], z[1])]
    }

    pub fn jacobian(&self, z: [Complex64; 2]) -> [[Complex64; 2]; 2] {
        let e = |p: &NumPoly| p.eval(z[0], z[1]);
        [
            [e(&self.jac[0][0]), e(&self.jac[0][1])],
            [e(&self.jac[1][0]), e(&self.jac[1][1])],
        ]
    }

    pub fn residual(&self, z: [Complex64; 2]) -> f64 {
        self.f
            .relative_residual(z[0], z[1])
            .max(self.g.relative_residual(z[0], z[1]))
    }
}
