use crate::koszul::GradedLinearMap;
use crate::linalg::RationalMatrix;
use crate::multilinear::{ExteriorTensor, Polynomial, Space};

/// Projection onto a constant subspace `K ⊂ S` cut out by linear conditions.
///
/// `K` is the kernel of a constraint matrix with one column per basis element
/// of `S`; the projector keeps the free coordinates of the reduced row echelon
/// form and fills in the pivot coordinates.
#[derive(Clone, Debug)]
pub struct SubspaceProjector {
    space: Space,
    basis: Vec<ExteriorTensor>,
    map: GradedLinearMap,
}

impl SubspaceProjector {
    pub fn from_constraints(name: impl Into<String>, space: Space, constraints: &RationalMatrix) -> Self {
        assert_eq!(constraints.ncols(), space.rank(), "one constraint column per basis element");
        let n = space.dim;
        let sb = space.basis();
        let (_, pivots) = constraints.rref();
        let free: Vec<usize> = (0..sb.len()).filter(|c| !pivots.contains(c)).collect();
        let kernel = constraints.kernel();
        debug_assert_eq!(kernel.len(), free.len());
        let basis: Vec<ExteriorTensor> = kernel
            .iter()
            .map(|v| {
                ExteriorTensor::from_terms(space, v.entries().iter().map(|(i, c)| (sb[*i], Polynomial::constant(n, c.clone()))))
            })
            .collect();
        let mut images = vec![space.zero(); sb.len()];
        for (f, k) in free.iter().zip(&basis) {
            images[*f] = k.clone();
        }
        let map = GradedLinearMap::from_fn(name, space, space, 0, |b| {
            let pos = sb.iter().position(|x| x == &b).expect("basis element");
            images[pos].clone()
        });
        SubspaceProjector { space, basis, map }
    }

    /// The whole space.
    pub fn full(space: Space) -> Self {
        Self::from_constraints("id", space, &RationalMatrix::zeros(0, space.rank()))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExteriorTensor] {
        &self.basis
    }

    pub fn map(&self) -> &GradedLinearMap {
        &self.map
    }

    pub fn project(&self, t: &ExteriorTensor) -> ExteriorTensor {
        self.map.apply(t)
    }

    /// Pointwise membership in `Γ(K)`.
    pub fn contains(&self, t: &ExteriorTensor) -> bool {
        t.space() == self.space && self.project(t) == *t
    }

    /// Idempotence, and fixed set equal to `K`: the projector fixes every basis
    /// vector of `K` and has rank `dim K`.
    pub fn check(&self) -> Result<(), String> {
        let sq = self.map.compose(&self.map);
        if sq.constant_matrix() != self.map.constant_matrix() {
            return Err(format!("{}: P∘P ≠ P", self.map.name()));
        }
        for k in &self.basis {
            if self.project(k) != *k {
                return Err(format!("{}: P moves {k}", self.map.name()));
            }
        }
        let r = self.map.constant_matrix().rank();
        if r != self.basis.len() {
            return Err(format!("{}: rank {r} ≠ dim K = {}", self.map.name(), self.basis.len()));
        }
        Ok(())
    }
}
