//! `gl(V)`, `gl(V,W)` and `sl(V)`: restrictions of the Nijenhuis–Richardson dg-Lie algebroid.

use crate::koszul::{
    constant_inverse, euler_contraction_d, negative_euler_partial, partial_trace_phi, ComplexSpec, GradedLinearMap,
    Position, Terminal,
};
use crate::linalg::{RationalMatrix, SparseVector};
use crate::multilinear::{Blade, Rational, Space, Target};

use super::{check_dim, BracketSuite, FamilyError, FamilyKind, FamilySpec, Structure, SubspaceProjector};

const DG: BracketSuite = BracketSuite { binary: "Nijenhuis–Richardson", has_ternary: false, dg_lie: true };

fn d_maps(n: usize) -> Vec<Option<GradedLinearMap>> {
    (0..=n)
        .map(|p| (p >= 1).then(|| euler_contraction_d(n, p, Target::Vector).expect("degree in range")))
        .collect()
}

fn foliation(n: usize) -> Position {
    Position::full("F", Space::new(n, 0, Target::Vector))
}

fn finish(
    kind: FamilyKind,
    n: usize,
    complex: ComplexSpec,
    cutoff: u32,
    projectors: Vec<SubspaceProjector>,
    top_scalar: bool,
) -> Result<FamilySpec, FamilyError> {
    complex.check_subspaces()?;
    let certificate = complex.exactness_certificate(cutoff)?;
    Ok(FamilySpec {
        kind,
        n,
        complex,
        brackets: DG,
        certificate,
        d: d_maps(n),
        projectors,
        structure: Structure::Dg { top_scalar },
    })
}

/// `0 → Γ(Λ^n V*⊗V) → … → Γ(V*⊗V) → F₀ → 0`.
pub fn build_gl(n: usize, cutoff: u32) -> Result<FamilySpec, FamilyError> {
    check_dim(n)?;
    let mut positions: Vec<Position> =
        (1..=n).rev().map(|p| Position::full(format!("Λ^{p}⊗V"), Space::new(n, p, Target::Vector))).collect();
    positions.push(Position::full("F₀", Space::new(n, 0, Target::Vector)));
    let differentials = (1..=n).rev().map(|p| euler_contraction_d(n, p, Target::Vector)).collect::<Result<_, _>>()?;
    let complex = ComplexSpec::new(format!("gl(n={n})"), positions, differentials, Terminal::Ideal);
    let projectors = (1..=n).map(|j| SubspaceProjector::full(Space::new(n, j, Target::Vector))).collect();
    finish(FamilyKind::Gl, n, complex, cutoff, projectors, false)
}

/// `K_j = {φ ∈ Λ^j V*⊗V : φ(w, v₁, …, v_{j−1}) ∈ W}` as the kernel of the
/// conditions `β(φ(w_a, e_S)) = 0` for `β` in the annihilator of `W`.
fn glw_projector(n: usize, j: usize, w: &[Vec<Rational>], ann: &[SparseVector]) -> SubspaceProjector {
    let space = Space::new(n, j, Target::Vector);
    let sb = space.basis();
    let mut rows = Vec::new();
    for wa in w {
        for s in Blade::all(n, j - 1) {
            for beta in ann {
                let mut row = Vec::new();
                for (col, b) in sb.iter().enumerate() {
                    let extra = Blade(b.form.0 & !s.0);
                    if s.0 & !b.form.0 != 0 || extra.len() != 1 {
                        continue;
                    }
                    let i = extra.sole();
                    let (sign, _) = Blade::single(i).wedge(s).expect("disjoint");
                    let c = &(&wa[i] * &beta.get(b.target.sole())) * &Rational::from(sign);
                    if !c.is_zero() {
                        row.push((col, c));
                    }
                }
                rows.push(SparseVector::from_pairs(row));
            }
        }
    }
    SubspaceProjector::from_constraints(format!("P_K{j}"), space, &RationalMatrix::from_rows(sb.len(), rows))
}

/// The family of endomorphisms preserving `W`, given by a basis of `W`.
pub fn build_glw(n: usize, w: Vec<Vec<Rational>>, cutoff: u32) -> Result<FamilySpec, FamilyError> {
    check_dim(n)?;
    if let Some(v) = w.iter().find(|v| v.len() != n) {
        return Err(FamilyError::WrongLength { expected: n, found: v.len() });
    }
    let wm = if w.is_empty() { RationalMatrix::zeros(0, n) } else { RationalMatrix::from_dense(&w) };
    if wm.rank() != w.len() {
        return Err(FamilyError::DependentW);
    }
    let ann = wm.kernel();
    let projectors: Vec<SubspaceProjector> = (1..=n).map(|j| glw_projector(n, j, &w, &ann)).collect();
    let mut positions: Vec<Position> = (1..=n)
        .rev()
        .map(|j| Position::sub(format!("K{j}"), projectors[j - 1].space(), projectors[j - 1].basis().to_vec()))
        .collect();
    positions.push(foliation(n));
    let differentials = (1..=n).rev().map(|p| euler_contraction_d(n, p, Target::Vector)).collect::<Result<_, _>>()?;
    let complex =
        ComplexSpec::new(format!("gl(V,W)(n={n},w={})", w.len()), positions, differentials, Terminal::Image);
    finish(FamilyKind::Glw(w), n, complex, cutoff, projectors, false)
}

/// `d_n ∘ φ_n^{-1} ∘ ∂_n : Γ(Λ^n V*) → Γ(Λ^{n−1} V*⊗V)`.
pub fn sl_top_differential(n: usize) -> Result<GradedLinearMap, FamilyError> {
    let del = negative_euler_partial(n, n, Target::Scalar)?;
    let phi_inv = constant_inverse(&partial_trace_phi(n, n)?)?;
    let d = euler_contraction_d(n, n, Target::Vector)?;
    Ok(d.compose(&phi_inv.compose(&del)).with_name(format!("d{n}φ{n}⁻¹∂{n}")))
}

/// `0 → Γ(Λ^n V*) → Γ(K_{n−1}) → … → Γ(K₁) → F_μ → 0` with `K_i = ker φ_i`.
pub fn build_sl(n: usize, cutoff: u32) -> Result<FamilySpec, FamilyError> {
    check_dim(n)?;
    if n < 2 {
        return Err(FamilyError::DegenerateSl(n));
    }
    let projectors: Vec<SubspaceProjector> = (1..=n)
        .map(|j| {
            let phi = partial_trace_phi(n, j)?;
            Ok(SubspaceProjector::from_constraints(format!("P_K{j}"), phi.source(), &phi.constant_matrix()))
        })
        .collect::<Result<_, FamilyError>>()?;
    let mut positions = vec![Position::full(format!("Λ^{n}"), Space::new(n, n, Target::Scalar))];
    for j in (1..n).rev() {
        let p = &projectors[j - 1];
        positions.push(Position::sub(format!("K{j}"), p.space(), p.basis().to_vec()));
    }
    positions.push(foliation(n));
    let mut differentials = vec![sl_top_differential(n)?];
    for j in (1..n).rev() {
        differentials.push(euler_contraction_d(n, j, Target::Vector)?);
    }
    let complex = ComplexSpec::new(format!("sl(n={n})"), positions, differentials, Terminal::Image);
    finish(FamilyKind::Sl, n, complex, cutoff, projectors, true)
}
