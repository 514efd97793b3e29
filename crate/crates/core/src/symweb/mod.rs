//! Symmetric forms in `dx, dy` with polynomial coefficients, webs as
//! primitive binary forms, and their tangency and discriminant loci.

mod form;
mod pullback;
mod web;

use thiserror::Error;

use crate::polycore::PolyError;

pub use form::SymForm;
pub use pullback::pullback;
pub use web::{
    discriminant, discriminant_locus, discriminant_via_fiber_derivation, primitive_part,
    rational_common_zeros, reduce, singular_locus, squarefree_factors, tang_foliations, tang_webs,
    SingularLocus, TangencyResult, Web,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("zero form")]
    ZeroForm,
    #[error("fiber degree 0 has no fiber derivative")]
    DegreeZero,
    #[error("expected fiber degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("forms are associates; their tangency is everything")]
    Associate,
    #[error("not homogeneous in {0}, {1}")]
    NotHomogeneous(String, String),
    #[error("map has identically zero Jacobian determinant")]
    DegenerateMap,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
