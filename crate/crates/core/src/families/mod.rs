//! The four classical linear families `gl(V)`, `gl(V,W)`, `sl(V)` and
//! `sp(V,ω)`: their resolutions as [`ComplexSpec`]s and their brackets.

mod dg;
mod projector;
mod sp;
mod suite;

pub use dg::{build_gl, build_glw, build_sl};
pub use projector::SubspaceProjector;
pub use dg::sl_top_differential;
pub use sp::{build_sp, NonDerivationWitness, SpStructure};
pub use suite::{lenient_add, lenient_eq};

use crate::brackets::{anchor, linf_degree, nr_bracket, BracketError};
use crate::koszul::{ComplexSpec, ExactnessCertificate, GradedLinearMap, KoszulError, SymplecticForm};
use crate::multilinear::{ExteriorTensor, Rational, Space, Target};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("dimension {0} is not supported (1 ≤ n ≤ 8)")]
    UnsupportedDimension(usize),
    #[error("sl(V) needs n ≥ 2, got n = {0}")]
    DegenerateSl(usize),
    #[error("the vectors spanning W are not linearly independent")]
    DependentW,
    #[error("vector of length {found} does not live in a space of dimension {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("element of {0} is not in this family")]
    NotAnElement(String),
    #[error("ternary bracket needs three entries of degree ≤ −1")]
    TernaryDegreeZero,
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Gl,
    /// `W` given by a basis of column vectors.
    Glw(Vec<Vec<Rational>>),
    Sl,
    Sp(SymplecticForm),
}

impl FamilyKind {
    pub fn tag(&self) -> String {
        match self {
            FamilyKind::Gl => "gl".into(),
            FamilyKind::Glw(w) => format!("glw(w={})", w.len()),
            FamilyKind::Sl => "sl".into(),
            FamilyKind::Sp(_) => "sp".into(),
        }
    }
}

/// What brackets a family carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketSuite {
    pub binary: &'static str,
    pub has_ternary: bool,
    pub dg_lie: bool,
}

#[derive(Clone, Debug)]
enum Structure {
    /// Restriction of the Nijenhuis–Richardson bracket, with `Λ^n V*` on top for `sl`.
    Dg { top_scalar: bool },
    Sp(Box<SpStructure>),
}

/// An assembled family: the resolution and its brackets.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub complex: ComplexSpec,
    pub brackets: BracketSuite,
    pub certificate: ExactnessCertificate,
    /// `d` on `Λ^p V*⊗V`, indexed by `p` (entry 0 unused).
    d: Vec<Option<GradedLinearMap>>,
    /// Projectors onto `K_j` (`gl(V,W)`, `sl(V)`), indexed by `j − 1`.
    projectors: Vec<SubspaceProjector>,
    structure: Structure,
}

impl FamilySpec {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Ranks of the modules of the resolution, top first, without the target foliation.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = self.complex.ranks();
        r.pop();
        r
    }

    /// Fiber dimensions at the origin, `i = 0, 1, …` (degree `0, −1, …`).
    pub fn fiber_ranks(&self) -> Vec<usize> {
        let mut r = self.ranks();
        r.reverse();
        r
    }

    /// Constant generators of each module, top first, without the target foliation.
    pub fn generators(&self) -> Vec<&[ExteriorTensor]> {
        let k = self.complex.positions.len() - 1;
        self.complex.positions[..k].iter().map(|p| p.basis.as_slice()).collect()
    }

    pub fn projectors(&self) -> &[SubspaceProjector] {
        &self.projectors
    }

    pub fn sp_structure(&self) -> Option<&SpStructure> {
        match &self.structure {
            Structure::Sp(s) => Some(s),
            Structure::Dg { .. } => None,
        }
    }

    /// The differential `ℓ₁`; `None` in degree 0.
    pub fn differential(&self, t: &ExteriorTensor) -> Option<ExteriorTensor> {
        match &self.structure {
            Structure::Sp(s) => s.differential(t),
            Structure::Dg { top_scalar } => {
                if t.is_zero() {
                    return None;
                }
                if t.target() == Target::Scalar {
                    debug_assert!(*top_scalar);
                    return Some(self.complex.differentials[0].apply(t));
                }
                let p = t.form_degree();
                if p <= 1 || p > self.n {
                    return None;
                }
                Some(self.d[p].as_ref().expect("d in range").apply(t))
            }
        }
    }

    /// The binary bracket `ℓ₂`.
    pub fn bracket(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, FamilyError> {
        match &self.structure {
            Structure::Sp(s) => s.binary(a, b),
            Structure::Dg { top_scalar: false } => Ok(nr_bracket(a, b)?),
            Structure::Dg { top_scalar: true } => self.sl_bracket(a, b),
        }
    }

    /// The ternary bracket; `None` for the dg-Lie families.
    pub fn ternary(
        &self,
        a: &ExteriorTensor,
        b: &ExteriorTensor,
        c: &ExteriorTensor,
    ) -> Result<Option<ExteriorTensor>, FamilyError> {
        match &self.structure {
            Structure::Sp(s) => s.ternary(a, b, c).map(Some),
            Structure::Dg { .. } => Ok(None),
        }
    }

    fn sl_bracket(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, FamilyError> {
        let n = self.n;
        let top = Space::new(n, n, Target::Scalar);
        match (a.target(), b.target()) {
            (Target::Vector, Target::Vector) => {
                if a.form_degree() + b.form_degree() > n {
                    return Ok(top.zero());
                }
                Ok(nr_bracket(a, b)?)
            }
            (Target::Vector, Target::Scalar) => {
                if a.form_degree() != 1 {
                    return Ok(top.zero());
                }
                let x = anchor(a)?;
                Ok(b.map_coeffs(|g| x.apply(g)))
            }
            (Target::Scalar, Target::Vector) => {
                let s = if (linf_degree(a) * linf_degree(b)).rem_euclid(2) == 1 { 1 } else { -1 };
                Ok(self.sl_bracket(b, a)?.scale(&Rational::from(s)))
            }
            (Target::Scalar, Target::Scalar) => Ok(top.zero()),
            _ => Err(FamilyError::NotAnElement(a.space().to_string())),
        }
    }

    /// Projects onto the canonical representative (`P` for the `sp` classes).
    pub fn canonical(&self, t: &ExteriorTensor) -> ExteriorTensor {
        match &self.structure {
            Structure::Sp(s) => s.canonical(t),
            Structure::Dg { .. } => t.clone(),
        }
    }
}

pub(crate) fn check_dim(n: usize) -> Result<(), FamilyError> {
    if n == 0 || n > crate::multilinear::MAX_DIM {
        return Err(FamilyError::UnsupportedDimension(n));
    }
    Ok(())
}
