//! `sp(V,ω)`: the resolution through the cokernels `C_p = coker φ^ω_p` and
//! the binary and ternary brackets built from `r^ω` and `P`.

use crate::brackets::{linf_degree, nr_bracket, semidirect_bracket, sp_action};
use crate::koszul::{
    constant_image, constant_inverse, constant_kernel, euler_contraction_d, negative_euler_partial, projector,
    r_omega, sp_phi_omega, ComplexSpec, GradedBasis, GradedLinearMap, Position, SymplecticForm, Terminal,
};
use crate::linalg::Echelon;
use crate::multilinear::{ExteriorTensor, Monomial, Rational, Space, Target};

use super::{check_dim, BracketSuite, FamilyError, FamilyKind, FamilySpec, Structure};

/// The maps of the `sp` resolution, indexed by form degree.
#[derive(Clone, Debug)]
pub struct SpStructure {
    omega: SymplecticForm,
    n: usize,
    /// `φ^ω_p`, `p = 1..=n+1`.
    phi: Vec<Option<GradedLinearMap>>,
    /// `r^ω_p`, `P_p`, `∂_p` on `Λ^p V*⊗Λ²V*` and `d_p` on `Λ^p V*⊗V`, `p = 1..=n`.
    r: Vec<Option<GradedLinearMap>>,
    proj: Vec<Option<GradedLinearMap>>,
    partial: Vec<Option<GradedLinearMap>>,
    d: Vec<Option<GradedLinearMap>>,
    phi2_inverse: GradedLinearMap,
    top_edge: GradedLinearMap,
}

fn sgn(odd: bool) -> Rational {
    Rational::from(if odd { -1 } else { 1 })
}

impl SpStructure {
    pub fn new(omega: SymplecticForm) -> Result<Self, FamilyError> {
        let n = omega.dim();
        let upto = |hi: usize, f: &dyn Fn(usize) -> Result<GradedLinearMap, crate::koszul::KoszulError>| {
            (0..=hi).map(|p| if p == 0 { Ok(None) } else { f(p).map(Some) }).collect::<Result<Vec<_>, _>>()
        };
        let phi = upto(n + 1, &|p| sp_phi_omega(&omega, p))?;
        let r = upto(n, &|p| r_omega(&omega, p))?;
        let proj = upto(n, &|p| projector(&omega, p))?;
        let partial = upto(n, &|p| negative_euler_partial(n, p, Target::Form(2)))?;
        let d = upto(n, &|p| euler_contraction_d(n, p, Target::Vector))?;
        let phi2_inverse = constant_inverse(phi[2].as_ref().expect("φ₂"))?;
        let top_edge = d[2]
            .as_ref()
            .expect("d₂")
            .compose(&phi2_inverse.compose(partial[2].as_ref().expect("∂₂")))
            .with_name("d₂φ₂⁻¹∂₂");
        Ok(SpStructure { omega, n, phi, r, proj, partial, d, phi2_inverse, top_edge })
    }

    pub fn omega(&self) -> &SymplecticForm {
        &self.omega
    }

    pub fn phi(&self, p: usize) -> &GradedLinearMap {
        self.phi[p].as_ref().expect("φ^ω in range")
    }

    pub fn r(&self, p: usize) -> &GradedLinearMap {
        self.r[p].as_ref().expect("r^ω in range")
    }

    pub fn projector(&self, p: usize) -> &GradedLinearMap {
        self.proj[p].as_ref().expect("P in range")
    }

    pub fn partial(&self, p: usize) -> &GradedLinearMap {
        self.partial[p].as_ref().expect("∂ in range")
    }

    pub fn phi2_inverse(&self) -> &GradedLinearMap {
        &self.phi2_inverse
    }

    /// `d₂ ∘ (φ^ω₂)^{-1} ∘ ∂₂ : Γ(C₃) → Γ(sp)`.
    pub fn top_edge(&self) -> &GradedLinearMap {
        &self.top_edge
    }

    fn p(&self, t: &ExteriorTensor) -> ExteriorTensor {
        let p = t.form_degree();
        if t.target() != Target::Form(2) || p == 0 || p > self.n {
            return t.clone();
        }
        self.projector(p).apply(t)
    }

    pub fn canonical(&self, t: &ExteriorTensor) -> ExteriorTensor {
        self.p(t)
    }

    /// `∂̄`: `d₂φ₂^{-1}∂₂` out of `C₃`, `P_{p−1}∂_p` out of `C_{p+1}` for `p ≥ 3`.
    pub fn differential(&self, t: &ExteriorTensor) -> Option<ExteriorTensor> {
        if t.is_zero() || t.target() != Target::Form(2) {
            return None;
        }
        match t.form_degree() {
            0 | 1 => None,
            2 => Some(self.top_edge.apply(t)),
            p if p <= self.n => Some(self.projector(p - 1).apply(&self.partial(p).apply(t))),
            _ => None,
        }
    }

    /// `r_{k−1}∂_k P_k(a)` for `a ∈ Γ(Λ^k V*⊗Λ²V*)`.
    fn lift(&self, a: &ExteriorTensor) -> ExteriorTensor {
        let k = a.form_degree();
        self.r(k - 1).apply(&self.partial(k).apply(&self.p(a)))
    }

    /// `[r∂P a, P b] + [P a, r∂P b]` in `Γ(Λ^{k+l−1} V*⊗Λ²V*)`.
    pub fn hat(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, FamilyError> {
        let t1 = sp_action(&self.lift(a), &self.p(b))?;
        let t2 = semidirect_bracket(&self.p(a), &self.lift(b))?;
        Ok(t1.add(&t2))
    }

    fn out_space(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Space {
        let t = if a.target() == Target::Vector && b.target() == Target::Vector { Target::Vector } else { Target::Form(2) };
        Space::new(self.n, (a.form_degree() + b.form_degree()).saturating_sub(1), t)
    }

    fn check_element(&self, t: &ExteriorTensor) -> Result<(), FamilyError> {
        let ok = t.dim() == self.n
            && match t.target() {
                Target::Vector => t.form_degree() == 1,
                Target::Form(2) => t.form_degree() >= 2,
                _ => false,
            };
        if !ok {
            return Err(FamilyError::NotAnElement(t.space().to_string()));
        }
        Ok(())
    }

    /// `⟦a, b⟧`: the semidirect bracket followed by `P` when an entry has degree 0,
    /// and `P_{k+l−1}(hat)` when both entries have negative degree.
    pub fn binary(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, FamilyError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let out = self.out_space(a, b);
        if a.is_zero() || b.is_zero() || out.form_degree > self.n {
            return Ok(out.zero());
        }
        match (a.target(), b.target()) {
            (Target::Vector, Target::Vector) => Ok(nr_bracket(a, b)?),
            (Target::Vector, _) | (_, Target::Vector) => Ok(self.p(&semidirect_bracket(a, b)?)),
            _ => Ok(self.p(&self.hat(a, b)?)),
        }
    }

    /// `⟦a, b, c⟧` for entries of form degrees `k, l, m ≥ 2`:
    /// `P( [r hat(a,b), P c] ± [r hat(b,c), P a] ± [r hat(c,a), P b] )`.
    pub fn ternary(
        &self,
        a: &ExteriorTensor,
        b: &ExteriorTensor,
        c: &ExteriorTensor,
    ) -> Result<ExteriorTensor, FamilyError> {
        for t in [a, b, c] {
            self.check_element(t)?;
            if t.target() != Target::Form(2) {
                return Err(FamilyError::TernaryDegreeZero);
            }
        }
        let (k, l, m) = (a.form_degree(), b.form_degree(), c.form_degree());
        let total = k + l + m - 1;
        let out = Space::new(self.n, total, Target::Form(2));
        if total > self.n {
            return Ok(out.zero());
        }
        let term = |x: &ExteriorTensor, y: &ExteriorTensor, z: &ExteriorTensor| -> Result<ExteriorTensor, FamilyError> {
            let h = self.hat(x, y)?;
            Ok(sp_action(&self.r(h.form_degree()).apply(&h), &self.p(z))?)
        };
        let (da, db, dc) = (linf_degree(a), linf_degree(b), linf_degree(c));
        let mut s = term(a, b, c)?;
        s.add_scaled(&term(b, c, a)?, &sgn((da * (db + dc)).rem_euclid(2) == 1));
        s.add_scaled(&term(c, a, b)?, &sgn((dc * (da + db)).rem_euclid(2) == 1));
        Ok(self.projector(total).apply(&s))
    }

    /// `⟦⟦a,b⟧,c⟧ + (−1)^{|a|(|b|+|c|)}⟦⟦b,c⟧,a⟧ + (−1)^{|c|(|a|+|b|)}⟦⟦c,a⟧,b⟧`.
    pub fn jacobiator(
        &self,
        a: &ExteriorTensor,
        b: &ExteriorTensor,
        c: &ExteriorTensor,
    ) -> Result<ExteriorTensor, FamilyError> {
        crate::brackets::jacobiator(a, b, c, |x, y| self.binary(x, y))
    }

    /// Right-hand side of the homotopy identity:
    /// `∂̄⟦a,b,c⟧ + ⟦∂̄a,b,c⟧ + (−1)^{k−1}⟦a,∂̄b,c⟧ + (−1)^{k+l}⟦a,b,∂̄c⟧`,
    /// where ternary brackets with an entry of degree 0 are zero.
    pub fn homotopy_rhs(
        &self,
        a: &ExteriorTensor,
        b: &ExteriorTensor,
        c: &ExteriorTensor,
    ) -> Result<ExteriorTensor, FamilyError> {
        let (k, l) = (a.form_degree(), b.form_degree());
        let out = Space::new(self.n, (k + l + c.form_degree()).saturating_sub(2), Target::Form(2));
        let mut s = out.zero();
        let t = self.ternary(a, b, c)?;
        if let Some(dt) = self.differential(&t) {
            s.add_scaled(&dt, &Rational::one());
        }
        let terms: [(Option<ExteriorTensor>, usize, bool); 3] = [
            (self.differential(a), 0, false),
            (self.differential(b), 1, (k - 1) % 2 == 1),
            (self.differential(c), 2, (k + l) % 2 == 1),
        ];
        for (dx, slot, odd) in terms {
            let Some(dx) = dx else { continue };
            if dx.target() != Target::Form(2) {
                continue;
            }
            let mut args = [a.clone(), b.clone(), c.clone()];
            args[slot] = dx;
            let v = self.ternary(&args[0], &args[1], &args[2])?;
            if !v.is_zero() {
                s.add_scaled(&v, &sgn(odd));
            }
        }
        Ok(s)
    }

    /// Search over pairs of constant generators of `C₃` for `ω₁, ω₂` such that
    /// `{∂̄ω₁, ω₂} + (−1)^{|ω₁|}{ω₁, ∂̄ω₂}` is not in the image of `φ^ω₃`.
    pub fn non_derivation_witness(&self, c3: &[ExteriorTensor]) -> Option<NonDerivationWitness> {
        for w1 in c3 {
            for w2 in c3 {
                let (d1, d2) = (self.top_edge.apply(w1), self.top_edge.apply(w2));
                let s = sgn(linf_degree(w1).rem_euclid(2) == 1);
                let mut comb = semidirect_bracket(&d1, w2).expect("sp acts on C₃");
                comb.add_scaled(&semidirect_bracket(w1, &d2).expect("sp acts on C₃"), &s);
                let residue = self.projector(2).apply(&comb);
                if residue.is_zero() {
                    continue;
                }
                let deg = comb.coefficient_degree().expect("homogeneous");
                let space = comb.space();
                let gb = GradedBasis::new(space, deg);
                let mut ech = Echelon::new();
                let phi3 = self.phi(3);
                for e in phi3.source().basis() {
                    let img = phi3.on_basis(&e);
                    for m in Monomial::all_of_degree(self.n, deg) {
                        ech.insert(gb.vector_of_shifted(&img, &m));
                    }
                }
                let rank_image = ech.rank();
                ech.insert(gb.vector_of(&comb));
                return Some(NonDerivationWitness {
                    omega1: w1.clone(),
                    omega2: w2.clone(),
                    combination: comb,
                    residue,
                    coefficient_degree: deg,
                    rank_image,
                    rank_with_combination: ech.rank(),
                });
            }
        }
        None
    }
}

/// Two classes on which the semidirect bracket `{−,−}` fails to be compatible with `∂̄`.
#[derive(Clone, Debug)]
pub struct NonDerivationWitness {
    pub omega1: ExteriorTensor,
    pub omega2: ExteriorTensor,
    pub combination: ExteriorTensor,
    /// `P₂` of the combination; nonzero exactly when it is not in `im φ^ω₃`.
    pub residue: ExteriorTensor,
    pub coefficient_degree: u32,
    /// Rank of `im φ^ω₃` in that coefficient degree, before and after adding the combination.
    pub rank_image: usize,
    pub rank_with_combination: usize,
}

/// `0 → Γ(C_{n+1}) → … → Γ(C₃) → Γ(sp(V,ω)) → F_ω → 0`.
pub fn build_sp(omega: SymplecticForm, cutoff: u32) -> Result<FamilySpec, FamilyError> {
    let n = omega.dim();
    check_dim(n)?;
    let sp = SpStructure::new(omega.clone())?;
    let mut positions = Vec::new();
    for p in (3..=n + 1).rev() {
        let q = p - 1;
        positions.push(Position::sub(format!("C{p}"), Space::new(n, q, Target::Form(2)), constant_image(sp.projector(q))));
    }
    positions.push(Position::sub("sp", Space::new(n, 1, Target::Vector), constant_kernel(sp.phi(1))));
    positions.push(Position::full("F", Space::new(n, 0, Target::Vector)));
    let mut differentials = Vec::new();
    for p in (4..=n + 1).rev() {
        differentials.push(sp.projector(p - 2).compose(sp.partial(p - 1)).with_name(format!("P{}∂{}", p - 2, p - 1)));
    }
    differentials.push(sp.top_edge().clone());
    differentials.push(sp.d[1].clone().expect("d₁"));
    let complex = ComplexSpec::new(format!("sp(n={n})"), positions, differentials, Terminal::Image);
    complex.check_subspaces()?;
    let certificate = complex.exactness_certificate(cutoff)?;
    let d = (0..=n).map(|p| (p >= 1).then(|| euler_contraction_d(n, p, Target::Vector).expect("in range"))).collect();
    Ok(FamilySpec {
        kind: FamilyKind::Sp(omega),
        n,
        complex,
        brackets: BracketSuite { binary: "⟦−,−⟧ via r^ω and P", has_ternary: n >= 6, dg_lie: n <= 4 },
        certificate,
        d,
        projectors: Vec::new(),
        structure: Structure::Sp(Box::new(sp)),
    })
}
