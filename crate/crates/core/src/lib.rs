//! Exact algebra for planar polynomial vector fields: Lie derivatives on
//! symmetric forms, invariant webs and curves, Riccati projectivization,
//! tangency and discriminant loci, and a numeric flow companion.

pub mod darboux;
pub mod dvariety;
pub mod numflow;
pub mod polycore;
pub mod scalar;
pub mod symweb;

pub use polycore::{MPoly, PolyError, Rational, UPoly};
pub use scalar::{Exact, Scalar, Tracked};

/// Polynomials with exact rational coefficients.
pub type QPoly = MPoly<Rational>;
/// Polynomials with double-precision coefficients.
pub type F64Poly = MPoly<f64>;
/// Polynomials with single-precision coefficients.
pub type F32Poly = MPoly<f32>;
/// Polynomials with complex double-precision coefficients.
pub type CPoly = MPoly<num_complex::Complex64>;
