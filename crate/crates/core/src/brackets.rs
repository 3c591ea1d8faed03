//! Anchor, Nijenhuis–Richardson bracket, the action on `Λ^•V*⊗Λ²V*` and the
//! isotropy action.
//!
//! An element of `Γ(Λ^p V*⊗V)` or `Γ(Λ^p V*⊗Λ²V*)` has L∞ degree `1 − p`.

use crate::multilinear::{
    lie_derivative_form, vf_bracket, BasisIndex, Blade, ExteriorTensor, Monomial, MultilinearError, Polynomial,
    Rational, Space, Target, VectorField,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BracketError {
    #[error("expected {expected}, got {found}")]
    WrongSpace { expected: &'static str, found: String },
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
}

/// L∞ degree `1 − p` of an element of form degree `p`.
pub fn linf_degree(t: &ExteriorTensor) -> i32 {
    1 - t.form_degree() as i32
}

fn parity(k: i32) -> bool {
    k.rem_euclid(2) == 1
}

fn sgn(odd: bool) -> i32 {
    if odd {
        -1
    } else {
        1
    }
}

fn expect_vector(t: &ExteriorTensor, what: &'static str) -> Result<(), BracketError> {
    if t.target() != Target::Vector {
        return Err(BracketError::WrongSpace { expected: what, found: t.space().to_string() });
    }
    Ok(())
}

fn expect_form2(t: &ExteriorTensor, what: &'static str) -> Result<(), BracketError> {
    if t.target() != Target::Form(2) {
        return Err(BracketError::WrongSpace { expected: what, found: t.space().to_string() });
    }
    Ok(())
}

fn check_dims(a: &ExteriorTensor, b: &ExteriorTensor) -> Result<(), BracketError> {
    if a.dim() != b.dim() {
        return Err(MultilinearError::DimensionMismatch(a.dim(), b.dim()).into());
    }
    Ok(())
}

/// `ρ(f e^i⊗e_j) = f x^i ∂_j`.
pub fn anchor(a: &ExteriorTensor) -> Result<VectorField, BracketError> {
    if a.form_degree() != 1 || a.target() != Target::Vector {
        return Err(BracketError::WrongSpace { expected: "Λ¹V*⊗V", found: a.space().to_string() });
    }
    let n = a.dim();
    let mut comps = vec![Polynomial::zero(n); n];
    for (b, f) in a.terms() {
        let i = b.form.sole();
        comps[b.target.sole()].add_assign(&f.mul_monomial(&Monomial::var(i)));
    }
    Ok(VectorField::new(comps)?)
}

/// `ρ(e^i⊗e_j)(g) = x^i ∂_j g`.
fn anchor_basis_on(n: usize, i: usize, j: usize, g: &Polynomial) -> Polynomial {
    let _ = n;
    g.derivative(j).mul_monomial(&Monomial::var(i))
}

/// The Nijenhuis–Richardson bracket with its anchor terms, extended by bilinearity
/// and the Leibniz rule over polynomial coefficients.
pub fn nr_bracket(a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, BracketError> {
    check_dims(a, b)?;
    expect_vector(a, "Λ^k V*⊗V")?;
    expect_vector(b, "Λ^k V*⊗V")?;
    let n = a.dim();
    let (k1, k2) = (a.form_degree(), b.form_degree());
    let out_space = Space::new(n, (k1 + k2).saturating_sub(1), Target::Vector);
    let mut out = out_space.zero();
    if k1 + k2 == 0 || k1 + k2 - 1 > n {
        return Ok(out);
    }
    let swap = sgn(parity(((k1 as i32) - 1) * ((k2 as i32) - 1)));
    let one = Monomial::ONE;
    for (ba, f) in a.terms() {
        let j = ba.target.sole();
        for (bb, g) in b.terms() {
            let l = bb.target.sole();
            let mut consts: Vec<(BasisIndex, i32)> = Vec::with_capacity(2);
            if let Some((s1, rest)) = bb.form.contract(j) {
                if let Some((s2, form)) = ba.form.wedge(rest) {
                    consts.push((BasisIndex::new(form, bb.target), s1 * s2));
                }
            }
            if let Some((s1, rest)) = ba.form.contract(l) {
                if let Some((s2, form)) = bb.form.wedge(rest) {
                    consts.push((BasisIndex::new(form, ba.target), -swap * s1 * s2));
                }
            }
            if !consts.is_empty() {
                let fg = f.mul(g);
                for (bi, s) in consts {
                    out.add_scaled_term(bi, &fg, &Rational::from(s), &one);
                }
            }
            if k1 == 1 {
                let t = anchor_basis_on(n, ba.form.sole(), j, g).mul(f);
                out.add_term(*bb, &t);
            }
            if k2 == 1 {
                let t = anchor_basis_on(n, bb.form.sole(), l, f).mul(g);
                out.add_term(*ba, &t.neg());
            }
        }
    }
    Ok(out)
}

/// Action of `Λ^p V*⊗V` on `Λ^q V*⊗Λ²V*`:
/// `(α⊗X)·(β⊗τ) = (−1)^{p−1} α∧ι_Xβ⊗τ + ι_{e_i}α∧β ⊗ e^i∧ι_Xτ` on constant
/// sections, with the anchor term `f ρ(A)(g) ω` when `p = 1`.
pub fn sp_action(a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, BracketError> {
    check_dims(a, b)?;
    expect_vector(a, "Λ^p V*⊗V")?;
    expect_form2(b, "Λ^q V*⊗Λ²V*")?;
    let n = a.dim();
    let (p, q) = (a.form_degree(), b.form_degree());
    let out_space = Space::new(n, (p + q).saturating_sub(1), Target::Form(2));
    let mut out = out_space.zero();
    if p + q == 0 || p + q - 1 > n {
        return Ok(out);
    }
    let s0 = sgn(parity(p as i32 - 1));
    let one = Monomial::ONE;
    for (ba, f) in a.terms() {
        let x = ba.target.sole();
        for (bb, g) in b.terms() {
            let mut consts: Vec<(BasisIndex, i32)> = Vec::new();
            if let Some((s1, rest)) = bb.form.contract(x) {
                if let Some((s2, form)) = ba.form.wedge(rest) {
                    consts.push((BasisIndex::new(form, bb.target), s0 * s1 * s2));
                }
            }
            if let Some((s1, tau_rest)) = bb.target.contract(x) {
                for i in ba.form.indices() {
                    let (s2, arest) = ba.form.contract(i).expect("index present");
                    let Some((s3, form)) = arest.wedge(bb.form) else { continue };
                    let Some((s4, tau)) = Blade::single(i).wedge(tau_rest) else { continue };
                    consts.push((BasisIndex::new(form, tau), s1 * s2 * s3 * s4));
                }
            }
            if !consts.is_empty() {
                let fg = f.mul(g);
                for (bi, s) in consts {
                    out.add_scaled_term(bi, &fg, &Rational::from(s), &one);
                }
            }
            if p == 1 {
                let t = anchor_basis_on(n, ba.form.sole(), x, g).mul(f);
                out.add_term(*bb, &t);
            }
        }
    }
    Ok(out)
}

/// Bracket of the semidirect product `Γ(Λ^•V*⊗V) ⋉ Γ(Λ^•V*⊗Λ²V*)`.
pub fn semidirect_bracket(a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, BracketError> {
    match (a.target(), b.target()) {
        (Target::Vector, Target::Vector) => nr_bracket(a, b),
        (Target::Vector, Target::Form(2)) => sp_action(a, b),
        (Target::Form(2), Target::Vector) => {
            let s = -sgn(parity(linf_degree(a) * linf_degree(b)));
            Ok(sp_action(b, a)?.scale(&Rational::from(s)))
        }
        (Target::Form(2), Target::Form(2)) => {
            check_dims(a, b)?;
            let p = (a.form_degree() + b.form_degree()).saturating_sub(1);
            Ok(Space::new(a.dim(), p, Target::Form(2)).zero())
        }
        _ => Err(BracketError::WrongSpace { expected: "V or Λ²V* target", found: a.space().to_string() }),
    }
}

/// Graded Jacobiator `[[a,b],c] + (−1)^{|a|(|b|+|c|)}[[b,c],a] + (−1)^{|c|(|a|+|b|)}[[c,a],b]`.
pub fn jacobiator<E>(
    a: &ExteriorTensor,
    b: &ExteriorTensor,
    c: &ExteriorTensor,
    bracket: impl Fn(&ExteriorTensor, &ExteriorTensor) -> Result<ExteriorTensor, E>,
) -> Result<ExteriorTensor, E> {
    let (da, db, dc) = (linf_degree(a), linf_degree(b), linf_degree(c));
    let t1 = bracket(&bracket(a, b)?, c)?;
    let t2 = bracket(&bracket(b, c)?, a)?.scale(&Rational::from(sgn(parity(da * (db + dc)))));
    let t3 = bracket(&bracket(c, a)?, b)?.scale(&Rational::from(sgn(parity(dc * (da + db)))));
    Ok(t1.add(&t2).add(&t3))
}

/// The two terms of the isotropy action `X·(α⊗Y) = L_{X⁽¹⁾}α⊗Y + α⊗[X⁽¹⁾, Y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyTerms {
    pub lie_derivative: ExteriorTensor,
    pub bracket: ExteriorTensor,
}

impl IsotropyTerms {
    pub fn total(&self) -> ExteriorTensor {
        self.lie_derivative.add(&self.bracket)
    }
}

/// Isotropy action of `X` (through its linear part) on `α⊗Y`.
pub fn fn_isotropy_action(
    x: &VectorField,
    alpha: &ExteriorTensor,
    y: &VectorField,
) -> Result<IsotropyTerms, BracketError> {
    let x1 = x.linear_part();
    let ld = lie_derivative_form(&x1, alpha)?;
    let br = vf_bracket(&x1, y)?;
    Ok(IsotropyTerms {
        lie_derivative: crate::koszul::maps::form_tensor_vector(&ld, y.components()),
        bracket: crate::koszul::maps::form_tensor_vector(alpha, br.components()),
    })
}

/// Isotropy action of `X` on an arbitrary element of `Γ(Λ^p V*⊗V)`,
/// written as `Σ_j α_j⊗∂_j`.
pub fn isotropy_action(x: &VectorField, t: &ExteriorTensor) -> Result<ExteriorTensor, BracketError> {
    expect_vector(t, "Λ^p V*⊗V")?;
    let n = t.dim();
    let scalar = Space::new(n, t.form_degree(), Target::Scalar);
    let mut out = t.space().zero();
    for j in 0..n {
        let mut alpha = scalar.zero();
        for (b, f) in t.terms() {
            if b.target.sole() == j {
                alpha.add_term(BasisIndex::new(b.form, Blade::EMPTY), f);
            }
        }
        if alpha.is_zero() {
            continue;
        }
        let y = VectorField::directional(n, j, Polynomial::one(n));
        out = out.add(&fn_isotropy_action(x, &alpha, &y)?.total());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_vec(n: usize, form: &[usize], j: usize) -> ExteriorTensor {
        ExteriorTensor::unit(Space::new(n, form.len(), Target::Vector), BasisIndex::vector(form, j))
    }

    #[test]
    fn nr_on_endomorphisms() {
        let a = basis_vec(2, &[0], 0);
        let b = basis_vec(2, &[1], 0);
        assert_eq!(nr_bracket(&a, &b).unwrap(), b.neg());
    }

    #[test]
    fn anchor_examples() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(anchor(&basis_vec(2, &[0], 0)).unwrap(), VectorField::directional(2, 0, x));
        assert_eq!(anchor(&basis_vec(2, &[1], 0)).unwrap(), VectorField::directional(2, 0, y));
        assert!(anchor(&Space::new(2, 1, Target::Vector).zero()).unwrap().is_zero());
    }

    #[test]
    fn identity_acts_by_two_on_omega() {
        let n = 4;
        let id = ExteriorTensor::from_terms(
            Space::new(n, 1, Target::Vector),
            (0..n).map(|i| (BasisIndex::vector(&[i], i), Polynomial::one(n))),
        );
        let w = crate::koszul::SymplecticForm::darboux(n).unwrap();
        let one_omega = crate::koszul::maps::form_tensor_form(
            &ExteriorTensor::unit(Space::new(n, 0, Target::Scalar), BasisIndex::scalar(&[])),
            w.form(),
        );
        assert_eq!(sp_action(&id, &one_omega).unwrap(), one_omega.scale(&Rational::from(2)));
    }
}
