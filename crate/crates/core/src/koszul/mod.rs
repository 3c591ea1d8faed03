//! Koszul differentials, comparison maps and graded cohomology.

pub mod complex;
pub mod map;
pub mod maps;
pub mod symplectic;

pub use complex::{Cohomology, ComplexSpec, ExactnessCertificate, Position, Terminal};
pub use map::{GradedBasis, GradedLinearMap};
pub use maps::{
    constant_image, constant_inverse, constant_kernel, constant_rank, euler_contraction_d, negative_euler_partial,
    euler_contract, partial_trace_phi, projector, r_omega, sp_phi_omega,
};
pub use symplectic::SymplecticForm;

pub use crate::linalg::RationalMatrix;

use crate::multilinear::{Space, Target};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KoszulError {
    #[error("{map} is defined for degrees {lo}..={hi}, got {degree}")]
    DegreeOutOfRange { map: &'static str, degree: usize, lo: usize, hi: usize },
    #[error("expected a scalar 2-form")]
    NotATwoForm,
    #[error("symplectic form must have constant coefficients")]
    NonConstantForm,
    #[error("symplectic form is degenerate")]
    DegenerateForm,
    #[error("dimension {0} is not even")]
    OddDimension(usize),
    #[error("map {0} is not constant")]
    NotConstant(String),
    #[error("map {0} is not invertible")]
    NotInvertible(String),
    #[error("{complex}: d∘d ≠ 0 at position {position}: {input} ↦ {output}")]
    CompositeNonzero { complex: String, position: usize, input: String, output: String },
    #[error("{complex}: differential {position} leaves the subspace on {input}")]
    SubspaceNotPreserved { complex: String, position: usize, input: String },
    #[error("{complex}: cohomology of dimension {dim} at {position}, coefficient degree {degree}")]
    NotExact { complex: String, position: String, degree: u32, dim: usize },
}

/// The complex `0 → Γ(Λ^n V*⊗T) → … → Γ(V*⊗T) → Γ(T)` with the Euler contraction.
///
/// With `Terminal::Ideal` the last module is `I_q ⊗ T` (the resolutions of
/// `I_q` and `F₀`); with `Terminal::Evaluation` and scalar `T` it continues to `ℝ`.
pub fn koszul_complex(n: usize, target: Target, terminal: Terminal) -> ComplexSpec {
    let positions = (0..=n)
        .rev()
        .map(|p| complex::Position::full(format!("Λ^{p}"), Space::new(n, p, target)))
        .collect();
    let differentials =
        (1..=n).rev().map(|p| euler_contraction_d(n, p, target).expect("degree in range")).collect();
    let name = match (target, terminal) {
        (Target::Scalar, Terminal::Evaluation) => format!("koszul(n={n}) → ℝ"),
        (Target::Scalar, _) => format!("koszul(n={n}) → I_q"),
        (Target::Vector, _) => format!("koszul(n={n}) ⊗ V → F₀"),
        (Target::Form(q), _) => format!("koszul(n={n}) ⊗ Λ^{q}"),
    };
    ComplexSpec::new(name, positions, differentials, terminal)
}
