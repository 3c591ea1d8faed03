//! Fibers `(E_i)_p` of minimal resolutions of a polynomial foliation at the
//! origin, computed as the homology of `Γ(Λ^•V*) ⊗ F`, and the isotropy action
//! on them for linear foliations.

mod fiber;
mod foliation;
mod isotropy;

pub use fiber::{tor_fiber, tor_report, GeneratorTerm, TorComplex, TorEntry, TorReport, TorRepresentative};
pub use foliation::{syzygies_by_degree, syzygies_up_to, Foliation, Involutivity};
pub use isotropy::{isotropy_lie_algebra, isotropy_representation, IsotropyAlgebra, IsotropyRepresentation};

use crate::brackets::BracketError;
use crate::multilinear::MultilinearError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorError {
    #[error("a foliation needs at least one generator")]
    Empty,
    #[error("dimension {0} is not supported (1 ≤ n ≤ 8)")]
    UnsupportedDimension(usize),
    #[error("generator {index} has {found} components, expected {expected}")]
    GeneratorDimension { index: usize, expected: usize, found: usize },
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generator {0} is not homogeneous; Tor needs homogeneous generators (see the free-module check)")]
    Inhomogeneous(usize),
    #[error("generator {0} is not linear")]
    NotLinear(usize),
    #[error("the generators are not closed under the bracket")]
    NotInvolutive,
    #[error("fiber index {i} outside 0..={n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}
