//! Polynomial vector fields `Σ X^i ∂_i`.

use std::fmt;

use super::polynomial::{Monomial, Polynomial};
use super::rational::Rational;
use super::tensor::{BasisIndex, Blade, ExteriorTensor, Space, Target};
use super::MultilinearError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, MultilinearError> {
        let n = components.len();
        if let Some(p) = components.iter().find(|p| p.dim() != n) {
            return Err(MultilinearError::ComponentCount { expected: p.dim(), found: n });
        }
        Ok(VectorField { components })
    }

    pub fn zero(dim: usize) -> Self {
        VectorField { components: vec![Polynomial::zero(dim); dim] }
    }

    /// `f ∂_i`.
    pub fn directional(dim: usize, i: usize, f: Polynomial) -> Self {
        let mut v = Self::zero(dim);
        v.components[i] = f;
        v
    }

    /// The linear field `(Ax)^j ∂_j` of a matrix `A` (row `j`, column `i`).
    pub fn linear(a: &[Vec<Rational>]) -> Self {
        let n = a.len();
        let components = (0..n)
            .map(|j| {
                Polynomial::from_terms(
                    n,
                    (0..n).map(|i| (Monomial::var(i), a[j][i].clone())),
                )
            })
            .collect();
        VectorField { components }
    }

    /// Euler field `x^i ∂_i`.
    pub fn euler(dim: usize) -> Self {
        VectorField { components: (0..dim).map(|i| Polynomial::var(dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Polynomial) -> VectorField {
        self.map(|p| p.mul(f))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> VectorField {
        VectorField { components: self.components.iter().map(f).collect() }
    }

    fn zip(&self, other: &VectorField, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> VectorField {
        assert_eq!(self.dim(), other.dim(), "vector field dimension mismatch");
        VectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `X(f) = X^i ∂_i f`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim());
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let df = f.derivative(i);
            if !df.is_zero() {
                out.add_assign(&xi.mul(&df));
            }
        }
        out
    }

    /// Degree-`d` part of each component.
    pub fn homogeneous_component(&self, d: u32) -> VectorField {
        self.map(|p| p.homogeneous_component(d))
    }

    /// Linear part `X^{(1)}`.
    pub fn linear_part(&self) -> VectorField {
        self.homogeneous_component(1)
    }

    pub fn is_linear(&self) -> bool {
        self.components.iter().all(|p| p.homogeneous_degree().map_or(p.is_zero(), |d| d == 1))
    }

    /// Common homogeneous degree of all nonzero components.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for p in &self.components {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()?;
            if deg.is_some_and(|e| e != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    /// Matrix `A` with `X = (Ax)^j ∂_j`, for a linear field.
    pub fn linear_matrix(&self) -> Result<Vec<Vec<Rational>>, MultilinearError> {
        if !self.is_linear() {
            return Err(MultilinearError::NonLinearField);
        }
        let n = self.dim();
        Ok((0..n)
            .map(|j| (0..n).map(|i| self.components[j].coeff(&Monomial::var(i))).collect())
            .collect())
    }

    /// As an element of `Γ(Λ^0 V* ⊗ V)`.
    pub fn to_tensor(&self) -> ExteriorTensor {
        let n = self.dim();
        let space = Space::new(n, 0, Target::Vector);
        ExteriorTensor::from_terms(
            space,
            self.components
                .iter()
                .enumerate()
                .map(|(j, p)| (BasisIndex::new(Blade::EMPTY, Blade::single(j)), p.clone())),
        )
    }

    pub fn from_tensor(t: &ExteriorTensor) -> Result<Self, MultilinearError> {
        if t.form_degree() != 0 || t.target() != Target::Vector {
            return Err(MultilinearError::TargetMismatch {
                expected: "Λ^0 V* ⊗ V",
                found: t.target(),
            });
        }
        let mut v = Self::zero(t.dim());
        for (b, p) in t.terms() {
            v.components[b.target.sole()] = p.clone();
        }
        Ok(v)
    }
}

/// `[X, Y]^j = X(Y^j) − Y(X^j)`.
pub fn vf_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, MultilinearError> {
    if x.dim() != y.dim() {
        return Err(MultilinearError::DimensionMismatch(x.dim(), y.dim()));
    }
    let components = (0..x.dim())
        .map(|j| x.apply(&y.components[j]).sub(&y.apply(&x.components[j])))
        .collect();
    Ok(VectorField { components })
}

/// `L_X a` for a linear field `X` and a scalar-valued form `a`.
///
/// Uses `L_X(f e^I) = X(f) e^I + f Σ_k e^{i_1} ∧ … ∧ dX^{i_k} ∧ … ∧ e^{i_p}`.
pub fn lie_derivative_form(x: &VectorField, a: &ExteriorTensor) -> Result<ExteriorTensor, MultilinearError> {
    if x.dim() != a.dim() {
        return Err(MultilinearError::DimensionMismatch(x.dim(), a.dim()));
    }
    if a.target() != Target::Scalar {
        return Err(MultilinearError::TargetMismatch { expected: "scalar-valued form", found: a.target() });
    }
    if !x.is_linear() {
        return Err(MultilinearError::NonLinearField);
    }
    let n = x.dim();
    let mut out = a.space().zero();
    for (b, f) in a.terms() {
        out.add_term(*b, &x.apply(f));
        // dX^{i} = Σ_j a_{ij} e^j with constant a_{ij}
        for i in b.form.indices() {
            let rest = Blade(b.form.0 & !(1 << i));
            let (s_out, _) = Blade::single(i).wedge(rest).expect("disjoint");
            for j in 0..n {
                let c = x.components[i].coeff(&Monomial::var(j));
                if c.is_zero() {
                    continue;
                }
                // replace e^i at its slot by e^j: sign of pulling e^i to the front, then pushing e^j back
                if let Some((s_in, blade)) = Blade::single(j).wedge(rest) {
                    let sign = Rational::from(s_out * s_in);
                    out.add_scaled_term(BasisIndex::new(blade, b.target), f, &(&c * &sign), &Monomial::ONE);
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})∂{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn brackets_of_linear_fields() {
        let xdx = VectorField::directional(2, 0, x(2, 0));
        let ydx = VectorField::directional(2, 0, x(2, 1));
        let xdy = VectorField::directional(2, 1, x(2, 0));
        assert_eq!(vf_bracket(&xdx, &ydx).unwrap(), ydx.scale(&Rational::from(-1)));
        assert_eq!(vf_bracket(&xdx, &xdy).unwrap(), xdy);
        assert!(vf_bracket(&xdx, &xdx).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let s = Space::new(2, 1, Target::Scalar);
        let dx = ExteriorTensor::unit(s, BasisIndex::scalar(&[0]));
        let dy = ExteriorTensor::unit(s, BasisIndex::scalar(&[1]));
        let xdx = VectorField::directional(2, 0, x(2, 0));
        let ydx = VectorField::directional(2, 0, x(2, 1));
        assert_eq!(lie_derivative_form(&xdx, &dx).unwrap(), dx);
        assert_eq!(lie_derivative_form(&ydx, &dx).unwrap(), dy);
        assert!(lie_derivative_form(&xdx, &dy).unwrap().is_zero());
        let sq = VectorField::directional(2, 0, x(2, 0).mul(&x(2, 0)));
        assert_eq!(lie_derivative_form(&sq, &dx), Err(MultilinearError::NonLinearField));
    }

    #[test]
    fn linear_matrix_roundtrip() {
        let a = vec![
            vec![Rational::from(1), Rational::from(2)],
            vec![Rational::from(0), Rational::from(-3)],
        ];
        let v = VectorField::linear(&a);
        assert_eq!(v.linear_matrix().unwrap(), a);
        assert_eq!(VectorField::from_tensor(&v.to_tensor()).unwrap(), v);
    }
}
