use crate::brackets::isotropy_action;
use crate::koszul::GradedBasis;
use crate::linalg::{Echelon, RationalMatrix, SparseVector};
use crate::multilinear::{vf_bracket, Rational, Space, Target, VectorField};

use super::{Foliation, TorComplex, TorError};

/// `F/I_pF` for a linear foliation: a basis of generator values and the structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyAlgebra {
    pub basis: Vec<VectorField>,
    /// Indices of the generators used as basis.
    pub generator_indices: Vec<usize>,
    /// `[b_a, b_b] = Σ_c structure[a][b][c] b_c`.
    pub structure: Vec<Vec<Vec<Rational>>>,
}

fn coords(basis: &[VectorField], v: &VectorField) -> Option<Vec<Rational>> {
    let n = v.dim();
    let gb = GradedBasis::new(Space::new(n, 0, Target::Vector), 1);
    let cols: Vec<SparseVector> = basis.iter().map(|b| gb.vector_of(&b.to_tensor())).collect();
    let m = RationalMatrix::from_columns(gb.len(), &cols);
    let x = m.solve(&gb.vector_of(&v.to_tensor()))?;
    Some(x.to_dense(basis.len()))
}

/// The isotropy Lie algebra at the origin of a linear foliation.
pub fn isotropy_lie_algebra(f: &Foliation) -> Result<IsotropyAlgebra, TorError> {
    if let Some(a) = f.generators().iter().position(|g| g.homogeneous_degree() != Some(1)) {
        return Err(TorError::NotLinear(a));
    }
    let n = f.dim();
    let gb = GradedBasis::new(Space::new(n, 0, Target::Vector), 1);
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    let mut idx = Vec::new();
    for (a, g) in f.generators().iter().enumerate() {
        if ech.insert(gb.vector_of(&g.to_tensor())).is_some() {
            basis.push(g.clone());
            idx.push(a);
        }
    }
    let mut structure = Vec::new();
    for x in &basis {
        let mut row = Vec::new();
        for y in &basis {
            let br = vf_bracket(x, y)?;
            row.push(coords(&basis, &br).ok_or(TorError::NotInvolutive)?);
        }
        structure.push(row);
    }
    Ok(IsotropyAlgebra { basis, generator_indices: idx, structure })
}

impl IsotropyAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(Rational::is_zero)
    }

    /// Coordinates of a linear field in this basis.
    pub fn coordinates(&self, v: &VectorField) -> Option<Vec<Rational>> {
        coords(&self.basis, v)
    }

    /// Matrix of `ad(b_a)` (column `b` = coordinates of `[b_a, b_b]`).
    pub fn ad(&self, a: usize) -> RationalMatrix {
        let d = self.dim();
        let rows: Vec<Vec<Rational>> =
            (0..d).map(|c| (0..d).map(|b| self.structure[a][b][c].clone()).collect()).collect();
        RationalMatrix::from_dense(&rows)
    }

    /// Antisymmetry and the Jacobi identity of the structure constants.
    pub fn check_lie_axioms(&self) -> Result<(), String> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    if self.structure[a][b][c] != -self.structure[b][a][c].clone() {
                        return Err(format!("not antisymmetric at ({a},{b})"));
                    }
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let lhs = self.ad(a).mul(&self.ad(b)).sub(&self.ad(b).mul(&self.ad(a)));
                let mut rhs = RationalMatrix::zeros(d, d);
                for c in 0..d {
                    rhs = rhs.add(&self.ad(c).scale(&self.structure[a][b][c]));
                }
                if lhs != rhs {
                    return Err(format!("Jacobi fails for ({a},{b})"));
                }
            }
        }
        Ok(())
    }
}

/// Matrices of the isotropy action on `(E_i)_p`, one per isotropy basis element,
/// in the basis of the fiber's representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyRepresentation {
    pub i: usize,
    pub dim: usize,
    pub matrices: Vec<RationalMatrix>,
}

impl IsotropyRepresentation {
    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(RationalMatrix::is_zero)
    }

    /// `ρ([a,b]) = ρ(a)ρ(b) − ρ(b)ρ(a)` on all basis pairs.
    pub fn check_representation(&self, alg: &IsotropyAlgebra) -> Result<(), String> {
        let d = alg.dim();
        for a in 0..d {
            for b in 0..d {
                let lhs = self.matrices[a].mul(&self.matrices[b]).sub(&self.matrices[b].mul(&self.matrices[a]));
                let mut rhs = RationalMatrix::zeros(self.dim, self.dim);
                for c in 0..d {
                    rhs = rhs.add(&self.matrices[c].scale(&alg.structure[a][b][c]));
                }
                if lhs != rhs {
                    return Err(format!("ρ([b{a}, b{b}]) ≠ [ρ(b{a}), ρ(b{b})]"));
                }
            }
        }
        Ok(())
    }
}

/// Action of the isotropy Lie algebra on `(E_i)_p` through the linear parts.
pub fn isotropy_representation(
    f: &Foliation,
    alg: &IsotropyAlgebra,
    i: usize,
    cutoff: u32,
) -> Result<IsotropyRepresentation, TorError> {
    let c = TorComplex::new(f, cutoff)?;
    isotropy_representation_in(&c, alg, i)
}

pub(crate) fn isotropy_representation_in(
    c: &TorComplex,
    alg: &IsotropyAlgebra,
    i: usize,
) -> Result<IsotropyRepresentation, TorError> {
    let n = c.foliation().dim();
    if i > n {
        return Err(TorError::IndexOutOfRange { i, n });
    }
    let cells: Vec<_> = (0..=c.cutoff()).map(|t| c.cell(i, t)).collect();
    let dim: usize = cells.iter().map(|x| x.dim).sum();
    let mut matrices = Vec::new();
    for x in &alg.basis {
        let mut m = RationalMatrix::zeros(dim, dim);
        let mut offset = 0;
        for cell in &cells {
            if cell.dim == 0 {
                continue;
            }
            let mut cols = cell.representatives.clone();
            cols.extend(cell.incoming.iter().cloned());
            let sys = RationalMatrix::from_columns(cell.basis.len(), &cols);
            for (j, rep) in cell.representatives.iter().enumerate() {
                let acted = isotropy_action(x, &cell.basis.tensor_of(rep))?;
                let v = cell.basis.vector_of(&acted);
                let sol = sys.solve(&v).ok_or_else(|| TorError::Internal("action left the cycles".into()))?;
                for (r, val) in sol.entries() {
                    if *r < cell.dim {
                        m.set(offset + r, offset + j, val.clone());
                    }
                }
            }
            offset += cell.dim;
        }
        matrices.push(m);
    }
    Ok(IsotropyRepresentation { i, dim, matrices })
}
