//! Complexes of free graded modules and their graded cohomology.

use rayon::prelude::*;

use crate::linalg::{Echelon, RationalMatrix, SparseVector};
use crate::multilinear::{ExteriorTensor, Monomial, Space};

use super::map::{GradedBasis, GradedLinearMap};
use super::KoszulError;

/// How the last position of a complex is closed off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    /// Full cohomology (cokernel of the incoming map).
    Cokernel,
    /// The module is `I_q ⊗ T`: only coefficient degrees `≥ 1` are checked.
    Ideal,
    /// Followed by evaluation at the origin onto `ℝ`.
    Evaluation,
    /// The position is the image module itself; nothing to check.
    Image,
}

/// One module `Γ(S)` of a complex, with `S` a constant subspace of an ambient space.
#[derive(Clone, Debug)]
pub struct Position {
    pub label: String,
    pub space: Space,
    /// Constant, linearly independent generators of `S`.
    pub basis: Vec<ExteriorTensor>,
}

impl Position {
    pub fn full(label: impl Into<String>, space: Space) -> Self {
        let basis = space.basis().into_iter().map(|b| ExteriorTensor::unit(space, b)).collect();
        Position { label: label.into(), space, basis }
    }

    pub fn sub(label: impl Into<String>, space: Space, basis: Vec<ExteriorTensor>) -> Self {
        Position { label: label.into(), space, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Positions listed from the top (highest form degree) down; `differentials[i]`
/// maps position `i` to position `i + 1`.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub name: String,
    pub positions: Vec<Position>,
    pub differentials: Vec<GradedLinearMap>,
    pub terminal: Terminal,
}

/// Cohomology of one position in one coefficient degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub position: usize,
    pub degree: u32,
    pub dim: usize,
    pub representatives: Vec<ExteriorTensor>,
}

impl ComplexSpec {
    pub fn new(
        name: impl Into<String>,
        positions: Vec<Position>,
        differentials: Vec<GradedLinearMap>,
        terminal: Terminal,
    ) -> Self {
        assert_eq!(positions.len(), differentials.len() + 1, "one differential between consecutive positions");
        for (i, d) in differentials.iter().enumerate() {
            assert_eq!(d.source(), positions[i].space, "differential {i} has the wrong source");
            assert_eq!(d.target(), positions[i + 1].space, "differential {i} has the wrong target");
        }
        ComplexSpec { name: name.into(), positions, differentials, terminal }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.positions.iter().map(Position::rank).collect()
    }

    /// `d_{i+1} ∘ d_i` vanishes on every generator of position `i`.
    pub fn check_composites(&self) -> Result<(), KoszulError> {
        for i in 0..self.differentials.len().saturating_sub(1) {
            let (d1, d2) = (&self.differentials[i], &self.differentials[i + 1]);
            for k in &self.positions[i].basis {
                let v = d2.apply(&d1.apply(k));
                if !v.is_zero() {
                    return Err(KoszulError::CompositeNonzero {
                        complex: self.name.clone(),
                        position: i,
                        input: k.to_string(),
                        output: v.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Each differential maps `Γ(S_i)` into `Γ(S_{i+1})`.
    pub fn check_subspaces(&self) -> Result<(), KoszulError> {
        for (i, d) in self.differentials.iter().enumerate() {
            let tgt = &self.positions[i + 1];
            let gb = GradedBasis::new(tgt.space, d.shift());
            let mut ech = Echelon::new();
            for k in &tgt.basis {
                for m in gb.monomials() {
                    ech.insert(gb.vector_of_shifted(k, m));
                }
            }
            for k in &self.positions[i].basis {
                let img = d.apply(k);
                if !ech.contains(&gb.vector_of(&img)) {
                    return Err(KoszulError::SubspaceNotPreserved {
                        complex: self.name.clone(),
                        position: i,
                        input: k.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    fn images(&self, i: usize, d: u32) -> Vec<SparseVector> {
        // images of the degree-d generators m·k of position i under differential i
        let diff = &self.differentials[i];
        let tgt = GradedBasis::new(diff.target(), d + diff.shift());
        let imgs: Vec<ExteriorTensor> = self.positions[i].basis.iter().map(|k| diff.apply(k)).collect();
        let mons = Monomial::all_of_degree(self.positions[i].space.dim, d);
        imgs.iter().flat_map(|t| mons.iter().map(|m| tgt.vector_of_shifted(t, m))).collect()
    }

    fn generators(&self, i: usize, d: u32) -> (GradedBasis, Vec<SparseVector>) {
        let gb = GradedBasis::new(self.positions[i].space, d);
        let mons = gb.monomials().to_vec();
        let gens = self.positions[i]
            .basis
            .iter()
            .flat_map(|k| mons.iter().map(|m| gb.vector_of_shifted(k, m)).collect::<Vec<_>>())
            .collect();
        (gb, gens)
    }

    fn incoming(&self, i: usize, d: u32) -> Vec<SparseVector> {
        if i == 0 {
            return Vec::new();
        }
        let s = self.differentials[i - 1].shift();
        if d < s {
            return Vec::new();
        }
        self.images(i - 1, d - s)
    }

    fn rank_of(vs: &[SparseVector]) -> usize {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v.clone());
        }
        e.rank()
    }

    fn checked(&self, i: usize, d: u32) -> bool {
        let last = i + 1 == self.positions.len();
        !(last && (self.terminal == Terminal::Image || (self.terminal == Terminal::Ideal && d == 0)))
    }

    /// Dimension of the cohomology at position `i`, coefficient degree `d`.
    ///
    /// Returns `None` where the complex imposes no condition (the image
    /// terminal, or degree 0 of an ideal terminal).
    pub fn cohomology_dim(&self, i: usize, d: u32) -> Option<usize> {
        if !self.checked(i, d) {
            return None;
        }
        let nmon = Monomial::count(self.positions[i].space.dim, d);
        let dim = self.positions[i].rank() * nmon;
        let last = i + 1 == self.positions.len();
        let out = if last {
            match self.terminal {
                Terminal::Evaluation if d == 0 => dim,
                _ => 0,
            }
        } else {
            Self::rank_of(&self.images(i, d))
        };
        let inc = Self::rank_of(&self.incoming(i, d));
        Some(dim - out - inc)
    }

    /// Cohomology with representatives: kernel vectors (canonical RREF basis)
    /// that are independent modulo the incoming image, in order.
    pub fn cohomology(&self, i: usize, d: u32) -> Option<Cohomology> {
        if !self.checked(i, d) {
            return None;
        }
        let (gb, gens) = self.generators(i, d);
        let last = i + 1 == self.positions.len();
        // kernel in generator coordinates
        let kernel: Vec<SparseVector> = if last {
            match self.terminal {
                Terminal::Evaluation if d == 0 => Vec::new(),
                _ => (0..gens.len()).map(SparseVector::unit).collect(),
            }
        } else {
            let imgs = self.images(i, d);
            let rows = GradedBasis::new(self.differentials[i].target(), d + self.differentials[i].shift()).len();
            RationalMatrix::from_columns(rows, &imgs).kernel()
        };
        let mut ech = Echelon::new();
        for v in self.incoming(i, d) {
            ech.insert(v);
        }
        let mut reps = Vec::new();
        for k in kernel {
            let mut amb = SparseVector::new();
            for (j, c) in k.entries() {
                amb = SparseVector::combine(&amb, &crate::multilinear::Rational::one(), &gens[*j], c);
            }
            if ech.insert(amb.clone()).is_some() {
                reps.push(gb.tensor_of(&amb));
            }
        }
        Some(Cohomology { position: i, degree: d, dim: reps.len(), representatives: reps })
    }

    /// Exactness certificate up to coefficient degree `cutoff`: every checked
    /// cohomology group vanishes. Returns the first nonzero group otherwise.
    pub fn exactness_certificate(&self, cutoff: u32) -> Result<ExactnessCertificate, KoszulError> {
        self.check_composites()?;
        let cells: Vec<(usize, u32)> =
            (0..self.positions.len()).flat_map(|i| (0..=cutoff).map(move |d| (i, d))).collect();
        let dims: Vec<(usize, u32, Option<usize>)> =
            cells.par_iter().map(|&(i, d)| (i, d, self.cohomology_dim(i, d))).collect();
        let mut checked = 0;
        for (i, d, h) in &dims {
            match h {
                Some(0) => checked += 1,
                Some(h) => {
                    return Err(KoszulError::NotExact {
                        complex: self.name.clone(),
                        position: self.positions[*i].label.clone(),
                        degree: *d,
                        dim: *h,
                    })
                }
                None => {}
            }
        }
        Ok(ExactnessCertificate { complex: self.name.clone(), cutoff, cells_checked: checked })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub complex: String,
    pub cutoff: u32,
    pub cells_checked: usize,
}
