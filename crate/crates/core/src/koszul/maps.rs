//! The Koszul-type maps: `d`, `∂`, `φ`, `φ^ω`, `r^ω` and the projector `P`.

use crate::linalg::RationalMatrix;
use crate::multilinear::{BasisIndex, Blade, ExteriorTensor, Monomial, Polynomial, Rational, Space, Target};

use super::map::GradedLinearMap;
use super::symplectic::SymplecticForm;
use super::KoszulError;

fn check_range(what: &'static str, p: usize, lo: usize, hi: usize) -> Result<(), KoszulError> {
    if p < lo || p > hi {
        return Err(KoszulError::DegreeOutOfRange { map: what, degree: p, lo, hi });
    }
    Ok(())
}

fn sign(s: i32) -> Rational {
    Rational::from(s)
}

fn contraction_with_euler(n: usize, p: usize, target: Target, c: i64, name: String) -> GradedLinearMap {
    let src = Space::new(n, p, target);
    let tgt = Space::new(n, p - 1, target);
    GradedLinearMap::from_fn(name, src, tgt, 1, |b| {
        let mut out = tgt.zero();
        for i in b.form.indices() {
            let (s, rest) = b.form.contract(i).expect("index present");
            out.add_term(
                BasisIndex::new(rest, b.target),
                &Polynomial::term(n, Monomial::var(i), sign(s * c as i32)),
            );
        }
        out
    })
}

/// `d_p(α⊗w) = x^i ι_{e_i}(α) ⊗ w`.
pub fn euler_contraction_d(n: usize, p: usize, target: Target) -> Result<GradedLinearMap, KoszulError> {
    check_range("d", p, 1, n)?;
    Ok(contraction_with_euler(n, p, target, 1, format!("d{p}")))
}

/// `∂_p(α⊗τ) = −x^i ι_{e_i}(α) ⊗ τ`.
pub fn negative_euler_partial(n: usize, p: usize, target: Target) -> Result<GradedLinearMap, KoszulError> {
    check_range("∂", p, 1, n)?;
    Ok(contraction_with_euler(n, p, target, -1, format!("∂{p}")))
}

/// `φ_k(α⊗v) = (−1)^{k−1} ι_v(α)`, from `Λ^k V* ⊗ V` to `Λ^{k−1} V*`.
pub fn partial_trace_phi(n: usize, k: usize) -> Result<GradedLinearMap, KoszulError> {
    check_range("φ", k, 1, n)?;
    let src = Space::new(n, k, Target::Vector);
    let tgt = Space::new(n, k - 1, Target::Scalar);
    let s0 = if k % 2 == 1 { 1 } else { -1 };
    Ok(GradedLinearMap::from_fn(format!("φ{k}"), src, tgt, 0, |b| {
        let mut out = tgt.zero();
        if let Some((s, rest)) = b.form.contract(b.target.sole()) {
            out.add_term(BasisIndex::new(rest, Blade::EMPTY), &Polynomial::constant(n, sign(s * s0)));
        }
        out
    }))
}

/// `φ^ω_p(α⊗X) = (−1)^{p−1} ι_{e_i}(α) ⊗ e^i ∧ ι_X ω`, from `Λ^p V* ⊗ V` to `Λ^{p−1} V* ⊗ Λ² V*`.
///
/// `p = n + 1` is accepted and gives the zero map out of the zero space.
pub fn sp_phi_omega(omega: &SymplecticForm, p: usize) -> Result<GradedLinearMap, KoszulError> {
    let n = omega.dim();
    check_range("φ^ω", p, 1, n + 1)?;
    let src = Space::new(n, p, Target::Vector);
    let tgt = Space::new(n, p - 1, Target::Form(2));
    let s0 = if p % 2 == 1 { 1 } else { -1 };
    let flats: Vec<Vec<(Blade, Rational)>> = (0..n)
        .map(|j| omega.flat(j).terms().map(|(b, c)| (b.form, c.eval_origin())).collect())
        .collect();
    Ok(GradedLinearMap::from_fn(format!("φω{p}"), src, tgt, 0, |b| {
        let mut out = tgt.zero();
        let x = b.target.sole();
        for i in b.form.indices() {
            let (s1, rest) = b.form.contract(i).expect("index present");
            for (beta, c) in &flats[x] {
                if let Some((s2, tau)) = Blade::single(i).wedge(*beta) {
                    out.add_term(
                        BasisIndex::new(rest, tau),
                        &Polynomial::constant(n, &sign(s0 * s1 * s2) * c),
                    );
                }
            }
        }
        out
    }))
}

/// `r^ω_p(α⊗τ) = (1/(p+1) α∧ι_{e_i}τ − (−1)^p/(p(p+1)) ι_{e_i}α∧τ) ⊗ ω^{-1}(e^i)`.
pub fn r_omega(omega: &SymplecticForm, p: usize) -> Result<GradedLinearMap, KoszulError> {
    let n = omega.dim();
    check_range("r^ω", p, 1, n)?;
    let src = Space::new(n, p, Target::Form(2));
    let tgt = Space::new(n, p + 1, Target::Vector);
    let pq = p as i64;
    let c1 = Rational::new(1, pq + 1);
    let c2 = Rational::new(if p % 2 == 0 { -1 } else { 1 }, pq * (pq + 1));
    Ok(GradedLinearMap::from_fn(format!("rω{p}"), src, tgt, 0, |b| {
        let mut out = tgt.zero();
        for i in 0..n {
            // the (p+1)-form multiplying ω^{-1}(e^i)
            let mut form: Vec<(Blade, Rational)> = Vec::new();
            if let Some((s, t)) = b.target.contract(i) {
                if let Some((s2, f)) = b.form.wedge(t) {
                    form.push((f, &c1 * &sign(s * s2)));
                }
            }
            if let Some((s, a)) = b.form.contract(i) {
                if let Some((s2, f)) = a.wedge(b.target) {
                    form.push((f, &c2 * &sign(s * s2)));
                }
            }
            for (f, c) in form {
                for (j, v) in omega.inverse_of_dual(i).iter().enumerate() {
                    if !v.is_zero() {
                        out.add_term(BasisIndex::new(f, Blade::single(j)), &Polynomial::constant(n, &c * v));
                    }
                }
            }
        }
        out
    }))
}

/// `P_p = id − φ^ω_{p+1} ∘ r^ω_p` on `Λ^p V* ⊗ Λ² V*`.
pub fn projector(omega: &SymplecticForm, p: usize) -> Result<GradedLinearMap, KoszulError> {
    let n = omega.dim();
    check_range("P", p, 1, n)?;
    let space = Space::new(n, p, Target::Form(2));
    let phi = sp_phi_omega(omega, p + 1)?;
    let r = r_omega(omega, p)?;
    Ok(GradedLinearMap::identity(space).sub(&phi.compose(&r)).with_name(format!("P{p}")))
}

/// Inverse of a constant isomorphism, via its constant matrix.
pub fn constant_inverse(m: &GradedLinearMap) -> Result<GradedLinearMap, KoszulError> {
    if m.shift() != 0 {
        return Err(KoszulError::NotConstant(m.name().to_string()));
    }
    let inv = m
        .constant_matrix()
        .inverse()
        .ok_or_else(|| KoszulError::NotInvertible(m.name().to_string()))?;
    Ok(GradedLinearMap::from_constant_matrix(format!("{}⁻¹", m.name()), m.target(), m.source(), &inv))
}

/// Tensor `α ⊗ τ` of a scalar form with a constant form placed in the target slot.
pub fn form_tensor_form(alpha: &ExteriorTensor, tau: &ExteriorTensor) -> ExteriorTensor {
    let n = alpha.dim();
    let space = Space::new(n, alpha.form_degree(), Target::Form(tau.form_degree() as u8));
    let mut out = space.zero();
    for (a, f) in alpha.terms() {
        for (t, g) in tau.terms() {
            out.add_term(BasisIndex::new(a.form, t.form), &f.mul(g));
        }
    }
    out
}

/// Tensor `α ⊗ v` of a scalar form with a vector field.
pub fn form_tensor_vector(alpha: &ExteriorTensor, v: &[Polynomial]) -> ExteriorTensor {
    let n = alpha.dim();
    let space = Space::new(n, alpha.form_degree(), Target::Vector);
    let mut out = space.zero();
    for (a, f) in alpha.terms() {
        for (j, g) in v.iter().enumerate() {
            if !g.is_zero() {
                out.add_term(BasisIndex::new(a.form, Blade::single(j)), &f.mul(g));
            }
        }
    }
    out
}

/// Rank of a constant map.
pub fn constant_rank(m: &GradedLinearMap) -> usize {
    m.constant_matrix().rank()
}

/// Constant basis of the kernel of a constant map, in canonical (RREF) form.
pub fn constant_kernel(m: &GradedLinearMap) -> Vec<ExteriorTensor> {
    let basis = m.source().basis();
    let n = m.source().dim;
    m.constant_matrix()
        .kernel()
        .into_iter()
        .map(|v| {
            ExteriorTensor::from_terms(
                m.source(),
                v.entries().iter().map(|(i, c)| (basis[*i], Polynomial::constant(n, c.clone()))),
            )
        })
        .collect()
}

/// Constant basis of the image of a constant map, in canonical (RREF) form.
pub fn constant_image(m: &GradedLinearMap) -> Vec<ExteriorTensor> {
    let tb = m.target().basis();
    let n = m.source().dim;
    let (rows, _) = m.constant_matrix().transpose().rref();
    rows.into_iter()
        .map(|v| {
            ExteriorTensor::from_terms(
                m.target(),
                v.entries().iter().map(|(i, c)| (tb[*i], Polynomial::constant(n, c.clone()))),
            )
        })
        .collect()
}

/// Dense matrix of constant tensors, one column per tensor, in the space's basis order.
pub fn constant_columns(space: Space, ts: &[ExteriorTensor]) -> RationalMatrix {
    let gb = super::map::GradedBasis::new(space, 0);
    let cols: Vec<_> = ts.iter().map(|t| gb.vector_of(t)).collect();
    RationalMatrix::from_columns(gb.len(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::{koszul_complex, Terminal};

    #[test]
    fn d_on_a_two_form() {
        let d = euler_contraction_d(2, 2, Target::Vector).unwrap();
        let s = Space::new(2, 2, Target::Vector);
        let img = d.apply(&ExteriorTensor::unit(s, BasisIndex::vector(&[0, 1], 0)));
        let t = Space::new(2, 1, Target::Vector);
        let want = ExteriorTensor::from_terms(
            t,
            [
                (BasisIndex::vector(&[1], 0), Polynomial::var(2, 0)),
                (BasisIndex::vector(&[0], 0), Polynomial::var(2, 1).neg()),
            ],
        );
        assert_eq!(img, want);
    }

    #[test]
    fn r_is_left_inverse_of_phi() {
        for n in [2, 4] {
            let w = SymplecticForm::darboux(n).unwrap();
            for p in 1..n {
                let rp = r_omega(&w, p).unwrap();
                let phi = sp_phi_omega(&w, p + 1).unwrap();
                assert!(rp.compose(&phi).constant_matrix().is_identity(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn kernel_of_phi_one_is_sp() {
        for n in [2, 4, 6] {
            let w = SymplecticForm::darboux(n).unwrap();
            let k = constant_kernel(&sp_phi_omega(&w, 1).unwrap());
            assert_eq!(k.len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn small_koszul_complexes_are_exact() {
        for n in 1..=3 {
            koszul_complex(n, Target::Scalar, Terminal::Ideal).exactness_certificate(3).unwrap();
            koszul_complex(n, Target::Scalar, Terminal::Evaluation).exactness_certificate(3).unwrap();
            koszul_complex(n, Target::Vector, Terminal::Ideal).exactness_certificate(3).unwrap();
        }
    }
}

/// `x^i ι_{e_i}(t)` computed directly, for any form degree (zero on `Λ^0` and past the top).
pub fn euler_contract(t: &ExteriorTensor) -> ExteriorTensor {
    let n = t.dim();
    let space = Space::new(n, t.form_degree().saturating_sub(1), t.target());
    let mut out = space.zero();
    if t.form_degree() == 0 {
        return out;
    }
    for i in 0..n {
        let c = t.contract(i);
        for (b, f) in c.terms() {
            out.add_scaled_term(*b, f, &Rational::one(), &Monomial::var(i));
        }
    }
    out
}
