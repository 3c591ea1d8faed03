//! Exact polynomial and exterior-tensor algebra over a fixed `n`-dimensional space.

pub mod polynomial;
pub mod rational;
pub mod tensor;
pub mod vector_field;

pub use polynomial::{binomial, Monomial, Polynomial, TermRecord};
pub use rational::{ParseRationalError, Rational};
pub use tensor::{BasisIndex, Blade, ExteriorTensor, Space, Target};
pub use vector_field::{lie_derivative_form, vf_bracket, VectorField};

/// Largest supported dimension of `V`.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultilinearError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected {expected}, found target {found:?}")]
    TargetMismatch { expected: &'static str, found: Target },
    #[error("vector field is not linear")]
    NonLinearField,
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
}
