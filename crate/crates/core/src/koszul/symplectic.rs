//! Constant symplectic forms.

use crate::linalg::RationalMatrix;
use crate::multilinear::{BasisIndex, Blade, ExteriorTensor, Rational, Space, Target};

use super::KoszulError;

/// A constant nondegenerate 2-form together with `ω^{-1}: V* → V`, the
/// inverse of `v ↦ ω(·, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    omega: ExteriorTensor,
    /// `inverse[i][j]`: `j`-th component of `ω^{-1}(e^i)`.
    inverse: Vec<Vec<Rational>>,
}

impl SymplecticForm {
    pub fn new(omega: ExteriorTensor) -> Result<Self, KoszulError> {
        let n = omega.dim();
        if omega.form_degree() != 2 || omega.target() != Target::Scalar {
            return Err(KoszulError::NotATwoForm);
        }
        if !omega.is_constant() {
            return Err(KoszulError::NonConstantForm);
        }
        if n % 2 != 0 {
            return Err(KoszulError::OddDimension(n));
        }
        // ω♭(e_i) = ω(·, e_i) = Σ_j ω(e_j, e_i) e^j; column i of `flat`
        let w = Self::matrix_of(&omega);
        let flat = RationalMatrix::from_dense(&w);
        let inv = flat.inverse().ok_or(KoszulError::DegenerateForm)?;
        // ω^{-1}(e^i) = Σ_j inv[j][i] e_j
        let inverse = (0..n).map(|i| (0..n).map(|j| inv.get(j, i)).collect()).collect();
        Ok(SymplecticForm { omega, inverse })
    }

    /// `Σ_{k ≤ n/2} e^k ∧ e^{k + n/2}`; for `n = 4` this is `e¹∧e³ + e²∧e⁴`.
    pub fn darboux(n: usize) -> Result<Self, KoszulError> {
        if n % 2 != 0 || n == 0 {
            return Err(KoszulError::OddDimension(n));
        }
        let m = n / 2;
        let space = Space::new(n, 2, Target::Scalar);
        let omega = ExteriorTensor::from_terms(
            space,
            (0..m).map(|k| (BasisIndex::scalar(&[k, k + m]), crate::multilinear::Polynomial::one(n))),
        );
        Self::new(omega)
    }

    fn matrix_of(omega: &ExteriorTensor) -> Vec<Vec<Rational>> {
        let n = omega.dim();
        let mut w = vec![vec![Rational::zero(); n]; n];
        for (b, p) in omega.terms() {
            let idx: Vec<usize> = b.form.indices().collect();
            let c = p.eval_origin();
            w[idx[1]][idx[0]] = -c.clone();
            w[idx[0]][idx[1]] = c;
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn form(&self) -> &ExteriorTensor {
        &self.omega
    }

    /// `ω(e_i, e_j)`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        Self::matrix_of(&self.omega)
    }

    /// Components of `ω^{-1}(e^i)`.
    pub fn inverse_of_dual(&self, i: usize) -> &[Rational] {
        &self.inverse[i]
    }

    /// `ι_{e_j} ω` as a constant 1-form.
    pub fn flat(&self, j: usize) -> ExteriorTensor {
        self.omega.contract(j)
    }

    /// `ω` as a single target basis expansion: `(blade, coefficient)` pairs.
    pub fn terms(&self) -> Vec<(Blade, Rational)> {
        self.omega.terms().map(|(b, p)| (b.form, p.eval_origin())).collect()
    }
}
