//! Exact rational arithmetic and the sparse multivariate polynomial engine,
//! with the elimination primitives everything else builds on.

mod division;
mod gcd;
mod mpoly;
pub mod numroots;
mod rational;
mod resultant;
mod roots;
mod upoly;
pub mod vars;

use thiserror::Error;

pub use division::exact_div;
pub use gcd::{content_in, gcd, primitive_part_in, radical, squarefree_part};
pub use mpoly::{MPoly, Monomial};
pub use rational::{q, qi, rational_reconstruct, Rational};
pub use resultant::{bareiss_det, eliminant, resultant, sylvester_det};
pub use roots::{rational_roots, squarefree_decomposition, RationalRoots};
pub use upoly::UPoly;
pub use vars::{var_list, VarList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("both polynomials are constant in `{0}`")]
    BothConstant(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
}
