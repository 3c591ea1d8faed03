//! `sp(4, ω)`-equivariant maps `Λ²V*⊗Λ²V* → Λ³V*⊗V` and the two obstructions to an
//! equivariant chain-level left inverse of `φ^ω`.
//!
//! Everything is fixed to `ω = e¹∧e³ + e²∧e⁴` on `V = ℝ⁴`. Elements of `V⊗V` are
//! stored as 4×4 matrices `T[a][b]` (coefficient of `e_a⊗e_b`) and sent to `Λ³V*⊗V`
//! by `e_a⊗e_b ↦ ι_{e_a}μ ⊗ e_b` with `μ = ½ω∧ω`.

use thiserror::Error;

use crate::brackets::{nr_bracket, sp_action, BracketError};
use crate::koszul::{
    constant_kernel, euler_contraction_d, negative_euler_partial, sp_phi_omega, GradedBasis, GradedLinearMap,
    KoszulError, SymplecticForm,
};
use crate::linalg::{Echelon, RationalMatrix, SparseVector};
use crate::multilinear::{BasisIndex, Blade, ExteriorTensor, Rational, Space, Target};

const N: usize = 4;

#[derive(Debug, Error)]
pub enum AppendixError {
    #[error("left-inverse constraints are inconsistent; residual {residual}")]
    Inconsistent { residual: String },
    #[error("constraint solution has dimension {0}, expected 2")]
    WrongSolutionDimension(usize),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

type Mat4 = [[Rational; N]; N];

fn zero4() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// The fixed form on `ℝ⁴`.
pub fn darboux4() -> SymplecticForm {
    SymplecticForm::darboux(N).expect("n = 4 is even")
}

/// The five generators `p₁, p₂, q₁, q₂, s` of the equivariant maps.
#[derive(Clone, Debug)]
pub struct EquivariantMapBasis {
    omega: SymplecticForm,
    maps: Vec<GradedLinearMap>,
}

pub const MAP_NAMES: [&str; 5] = ["p1", "p2", "q1", "q2", "s"];

/// Pointwise helpers on constant 2-forms, viewed as antisymmetric matrices `τ[a][b] = τ(e_a, e_b)`.
struct Forms {
    omega: Mat4,
    /// `inv[i]`: components of `(ω♭)^{-1}(e^i)` with `ω♭(v) = ι_v ω`.
    inv: Vec<Vec<Rational>>,
    /// `sharp[i]`: components of `ω^{-1}(e^i) = π_ω(e^i, ·)`.
    sharp: Vec<Vec<Rational>>,
    volume: ExteriorTensor,
}

impl Forms {
    fn new(omega: &SymplecticForm) -> Self {
        let w = omega.matrix();
        let omega_mat = std::array::from_fn(|a| std::array::from_fn(|b| w[a][b].clone()));
        // `SymplecticForm` inverts `v ↦ ω(·, v) = −ι_v ω`
        let inv = (0..N).map(|i| omega.inverse_of_dual(i).iter().map(|c| -c).collect()).collect();
        let pi = Self::pi();
        let sharp = (0..N).map(|i| pi[i].to_vec()).collect();
        let ww = omega.form().wedge(omega.form()).expect("same dimension");
        Forms { omega: omega_mat, inv, sharp, volume: ww.scale(&half()) }
    }

    fn of_blade(b: Blade) -> Mat4 {
        let idx: Vec<usize> = b.indices().collect();
        let mut m = zero4();
        m[idx[0]][idx[1]] = Rational::one();
        m[idx[1]][idx[0]] = -Rational::one();
        m
    }

    /// `τ(e₁,e₃) + τ(e₂,e₄)`.
    fn trace(t: &Mat4) -> Rational {
        &t[0][2] + &t[1][3]
    }

    /// `τ̄ = τ − ½ trace(τ) ω`.
    fn bar(&self, t: &Mat4) -> Mat4 {
        let c = &half() * &Self::trace(t);
        std::array::from_fn(|a| std::array::from_fn(|b| &t[a][b] - &(&c * &self.omega[a][b])))
    }

    /// `(α∧β)(v₁,v₂,v₃,v₄)` for basis vectors `v = (e_{i₁},…,e_{i₄})`.
    fn wedge_eval(a: &Mat4, b: &Mat4, v: [usize; 4]) -> Rational {
        // (2,2)-shuffles of the argument positions, with signs
        const SHUFFLES: [([usize; 4], i64); 6] = [
            ([0, 1, 2, 3], 1),
            ([0, 2, 1, 3], -1),
            ([0, 3, 1, 2], 1),
            ([1, 2, 0, 3], 1),
            ([1, 3, 0, 2], -1),
            ([2, 3, 0, 1], 1),
        ];
        let mut s = Rational::zero();
        for (p, sg) in SHUFFLES {
            let term = &a[v[p[0]]][v[p[1]]] * &b[v[p[2]]][v[p[3]]];
            s += &(&term * &Rational::from(sg));
        }
        s
    }

    /// `τ(u, e_j)` for a vector `u` given by components.
    fn eval_left(t: &Mat4, u: &[Rational], j: usize) -> Rational {
        (0..N).map(|m| &u[m] * &t[m][j]).sum()
    }

    /// `(ω^{-1}∧ω^{-1})(β)` embedded in `V⊗V` by `v∧w ↦ ½(v⊗w − w⊗v)`.
    fn bivector(&self, beta: &Mat4) -> Mat4 {
        let mut out = zero4();
        for a in 0..N {
            for b in 0..N {
                if beta[a][b].is_zero() {
                    continue;
                }
                let c = &half() * &beta[a][b];
                add_outer(&mut out, &c, &self.inv[a], &self.inv[b]);
            }
        }
        out
    }

    /// `π_ω = ½(e₁⊗e₃ + e₂⊗e₄ − e₃⊗e₁ − e₄⊗e₂)`.
    fn pi() -> Mat4 {
        let mut m = zero4();
        m[0][2] = half();
        m[1][3] = half();
        m[2][0] = -half();
        m[3][1] = -half();
        m
    }

    fn p1(&self, t1: &Mat4, t2: &Mat4) -> Mat4 {
        let c = &Rational::new(1, 4) * &(&Self::trace(t1) * &Self::trace(t2));
        scale4(&Self::pi(), &c)
    }

    fn p2(&self, t1: &Mat4, t2: &Mat4) -> Mat4 {
        let c = Self::wedge_eval(&self.bar(t1), &self.bar(t2), [0, 2, 1, 3]);
        scale4(&Self::pi(), &c)
    }

    fn q1(&self, t1: &Mat4, t2: &Mat4) -> Mat4 {
        let c = &half() * &Self::trace(t2);
        scale4(&self.bivector(&self.bar(t1)), &c)
    }

    fn q2(&self, t1: &Mat4, t2: &Mat4) -> Mat4 {
        let c = &half() * &Self::trace(t1);
        scale4(&self.bivector(&self.bar(t2)), &c)
    }

    /// `τ̄₁((ω♭)^{-1}(e^k), e_j) τ̄₂(e_k, e_l) ω^{-1}(e^j)·ω^{-1}(e^l)`, with
    /// `v·w ↦ ½(v⊗w + w⊗v)`.
    fn s(&self, t1: &Mat4, t2: &Mat4) -> Mat4 {
        let (b1, b2) = (self.bar(t1), self.bar(t2));
        let mut out = zero4();
        for j in 0..N {
            for l in 0..N {
                let c: Rational = (0..N).map(|k| &Self::eval_left(&b1, &self.inv[k], j) * &b2[k][l]).sum();
                if c.is_zero() {
                    continue;
                }
                let c = &half() * &c;
                add_outer(&mut out, &c, &self.sharp[j], &self.sharp[l]);
                add_outer(&mut out, &c, &self.sharp[l], &self.sharp[j]);
            }
        }
        out
    }

    /// `V⊗V → Λ³V*⊗V`, `e_a⊗e_b ↦ ι_{e_a}μ ⊗ e_b`.
    fn to_forms(&self, t: &Mat4) -> ExteriorTensor {
        let space = Space::new(N, 3, Target::Vector);
        let mut out = space.zero();
        for a in 0..N {
            let iota = self.volume.contract(a);
            for b in 0..N {
                if t[a][b].is_zero() {
                    continue;
                }
                for (bi, p) in iota.terms() {
                    out.add_term(BasisIndex::new(bi.form, Blade::single(b)), &p.scale(&t[a][b]));
                }
            }
        }
        out
    }
}

fn add_outer(m: &mut Mat4, c: &Rational, v: &[Rational], w: &[Rational]) {
    for a in 0..N {
        if v[a].is_zero() {
            continue;
        }
        let cv = c * &v[a];
        for b in 0..N {
            if !w[b].is_zero() {
                m[a][b] += &(&cv * &w[b]);
            }
        }
    }
}

fn scale4(m: &Mat4, c: &Rational) -> Mat4 {
    std::array::from_fn(|a| std::array::from_fn(|b| &m[a][b] * c))
}

fn source_space() -> Space {
    Space::new(N, 2, Target::Form(2))
}

fn target_space() -> Space {
    Space::new(N, 3, Target::Vector)
}

/// Basis of `sp(4, ω) = ker φ^ω_1` as constant elements of `V*⊗V`.
pub fn sp4_generators(omega: &SymplecticForm) -> Result<Vec<ExteriorTensor>, AppendixError> {
    Ok(constant_kernel(&sp_phi_omega(omega, 1)?))
}

impl EquivariantMapBasis {
    pub fn omega(&self) -> &SymplecticForm {
        &self.omega
    }

    pub fn maps(&self) -> &[GradedLinearMap] {
        &self.maps
    }

    pub fn get(&self, name: &str) -> Option<&GradedLinearMap> {
        MAP_NAMES.iter().position(|m| *m == name).map(|i| &self.maps[i])
    }

    /// `Σ c_i m_i` over `p₁, p₂, q₁, q₂, s`.
    pub fn combination(&self, c: &[Rational; 5]) -> GradedLinearMap {
        let mut out = GradedLinearMap::zero("r̃", source_space(), target_space(), 0);
        for (m, ci) in self.maps.iter().zip(c) {
            if !ci.is_zero() {
                out = out.add(&m.scale(ci));
            }
        }
        out.with_name("r̃")
    }

    /// Value of a named map on `τ₁⊗τ₂` for constant 2-forms.
    pub fn evaluate(&self, name: &str, t1: &ExteriorTensor, t2: &ExteriorTensor) -> Option<ExteriorTensor> {
        let m = self.get(name)?;
        let mut arg = source_space().zero();
        for (b1, c1) in t1.terms() {
            for (b2, c2) in t2.terms() {
                arg.add_term(BasisIndex::new(b1.form, b2.form), &c1.mul(c2));
            }
        }
        Some(m.apply(&arg))
    }

    /// `m(A·x) − A·m(x)` for every map, generator and basis element; returns the
    /// first nonzero residual as `(map, generator index, basis element, residual)`.
    pub fn equivariance_defect(
        &self,
        generators: &[ExteriorTensor],
    ) -> Result<Option<(String, usize, BasisIndex, ExteriorTensor)>, AppendixError> {
        for (name, m) in MAP_NAMES.iter().zip(&self.maps) {
            for (g, a) in generators.iter().enumerate() {
                for b in source_space().basis() {
                    let x = ExteriorTensor::unit(source_space(), b);
                    let lhs = m.apply(&sp_action(a, &x)?);
                    let rhs = nr_bracket(a, &m.apply(&x))?;
                    let res = lhs.sub(&rhs);
                    if !res.is_zero() {
                        return Ok(Some((name.to_string(), g, b, res)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Rank of the five constant matrices viewed as vectors.
    pub fn rank(&self) -> usize {
        let rows = self.maps.iter().map(|m| flatten(&m.constant_matrix())).collect();
        RationalMatrix::from_rows(target_space().rank() * source_space().rank(), rows).rank()
    }
}

fn flatten(m: &RationalMatrix) -> SparseVector {
    let nc = m.ncols();
    SparseVector::from_pairs(
        (0..m.nrows()).flat_map(|i| m.row(i).entries().iter().map(move |(j, v)| (i * nc + j, v.clone())).collect::<Vec<_>>()),
    )
}

/// Builds `p₁, p₂, q₁, q₂, s` for the Darboux form on `ℝ⁴`. The first factor of
/// `Λ²V*⊗Λ²V*` is `τ₁`, the second `τ₂`.
pub fn build_equivariant_basis() -> EquivariantMapBasis {
    let omega = darboux4();
    let forms = Forms::new(&omega);
    type Rule = fn(&Forms, &Mat4, &Mat4) -> Mat4;
    let rules: [Rule; 5] = [Forms::p1, Forms::p2, Forms::q1, Forms::q2, Forms::s];
    let maps = MAP_NAMES
        .iter()
        .zip(rules)
        .map(|(name, rule)| {
            GradedLinearMap::from_fn(*name, source_space(), target_space(), 0, |b| {
                let (t1, t2) = (Forms::of_blade(b.form), Forms::of_blade(b.target));
                forms.to_forms(&rule(&forms, &t1, &t2))
            })
        })
        .collect();
    EquivariantMapBasis { omega, maps }
}

/// An affine function `c₀ + c_λ λ₂ + c_μ μ₂`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Affine {
    pub constant: Rational,
    pub lambda2: Rational,
    pub mu2: Rational,
}

impl Affine {
    fn new(c: i64, l: i64, m: i64) -> Self {
        Affine { constant: Rational::from(c), lambda2: Rational::from(l), mu2: Rational::from(m) }
    }

    pub fn at(&self, lambda2: &Rational, mu2: &Rational) -> Rational {
        &(&self.constant + &(&self.lambda2 * lambda2)) + &(&self.mu2 * mu2)
    }
}

impl std::fmt::Display for Affine {
    /// Written as `2−10λ₂`, `μ₂−2`, `−2`: a positive constant leads, otherwise it trails.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut vars = Vec::new();
        for (c, v) in [(&self.lambda2, "λ₂"), (&self.mu2, "μ₂")] {
            if !c.is_zero() {
                let body = if c.abs().is_one() { v.to_string() } else { format!("{}{v}", c.abs()) };
                vars.push((c.is_negative(), body));
            }
        }
        let constant = (!self.constant.is_zero()).then(|| (self.constant.is_negative(), self.constant.abs().to_string()));
        let mut parts = Vec::new();
        match constant {
            Some(c) if !c.0 => {
                parts.push(c);
                parts.extend(vars);
            }
            Some(c) => {
                parts.extend(vars);
                parts.push(c);
            }
            None => parts.extend(vars),
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            let sign = match (neg, i) {
                (true, _) => "−",
                (false, 0) => "",
                (false, _) => "+",
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// Solutions of `(λ₁p₁ + λ₂p₂ + μ₁q₁ + μ₂q₂ + νs)∘φ^ω_3 = id`, parametrized by `(λ₂, μ₂)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ConstraintSolution {
    pub lambda1: Affine,
    pub mu1: Affine,
    pub nu: Affine,
    /// Dimension of the affine solution space.
    pub dim: usize,
}

impl ConstraintSolution {
    /// `(λ₁, λ₂, μ₁, μ₂, ν)` at the given parameters.
    pub fn at(&self, lambda2: &Rational, mu2: &Rational) -> [Rational; 5] {
        [
            self.lambda1.at(lambda2, mu2),
            lambda2.clone(),
            self.mu1.at(lambda2, mu2),
            mu2.clone(),
            self.nu.at(lambda2, mu2),
        ]
    }

    /// `λ₁ = 2 − 10λ₂`, `μ₁ = μ₂ − 2`, `ν = −2`.
    pub fn closed_form() -> Self {
        ConstraintSolution { lambda1: Affine::new(2, -10, 0), mu1: Affine::new(-2, 0, 1), nu: Affine::new(-2, 0, 0), dim: 2 }
    }
}

/// `m ∘ φ^ω_3` for each generator, as `16×16` matrices.
pub fn composites_with_phi3(basis: &EquivariantMapBasis) -> Result<Vec<RationalMatrix>, AppendixError> {
    let phi3 = sp_phi_omega(basis.omega(), 3)?.constant_matrix();
    Ok(basis.maps().iter().map(|m| m.constant_matrix().mul(&phi3)).collect())
}

pub fn solve_left_inverse_constraints(basis: &EquivariantMapBasis) -> Result<ConstraintSolution, AppendixError> {
    let comps = composites_with_phi3(basis)?;
    let size = comps[0].nrows() * comps[0].ncols();
    let cols: Vec<SparseVector> = comps.iter().map(flatten).collect();
    let a = RationalMatrix::from_columns(size, &cols);
    let id = flatten(&RationalMatrix::identity(comps[0].nrows()));
    let particular = a.solve(&id).ok_or_else(|| AppendixError::Inconsistent {
        residual: format!("{} equations in 5 unknowns with no solution (rank {})", size, a.rank()),
    })?;
    let kernel = a.kernel();
    if kernel.len() != 2 {
        return Err(AppendixError::WrongSolutionDimension(kernel.len()));
    }
    // reparametrize the kernel by its (λ₂, μ₂) coordinates
    let k = RationalMatrix::from_dense(&[
        vec![kernel[0].get(1), kernel[1].get(1)],
        vec![kernel[0].get(3), kernel[1].get(3)],
    ]);
    let kinv = k.inverse().ok_or(AppendixError::WrongSolutionDimension(kernel.len()))?;
    let p: Vec<Rational> = particular.to_dense(5);
    let param = |i: usize| -> Affine {
        // value at (λ₂, μ₂) = p_i + Σ_j kernel[j]_i · t_j, with t = K^{-1}((λ₂, μ₂) − (p₁, p₃))
        let row: Vec<Rational> =
            (0..2).map(|c| (0..2).map(|j| &kernel[j].get(i) * &kinv.get(j, c)).sum()).collect();
        let constant = &p[i] - &(&(&row[0] * &p[1]) + &(&row[1] * &p[3]));
        Affine { constant, lambda2: row[0].clone(), mu2: row[1].clone() }
    };
    Ok(ConstraintSolution { lambda1: param(0), mu1: param(2), nu: param(4), dim: kernel.len() })
}


/// Whether `r̃ ∘ φ^ω_3` is the identity on `Λ³V*⊗V`.
pub fn is_left_inverse(r: &GradedLinearMap, omega: &SymplecticForm) -> Result<bool, AppendixError> {
    let phi3 = sp_phi_omega(omega, 3)?;
    Ok(r.compose(&phi3).constant_matrix().is_identity())
}

/// `d₃ ∘ r̃ ∘ ∂₃ : Γ(Λ³V*⊗Λ²V*) → Γ(Λ²V*⊗V)`.
pub fn chain_residual(r: &GradedLinearMap) -> Result<GradedLinearMap, AppendixError> {
    let partial = negative_euler_partial(N, 3, Target::Form(2))?;
    let d = euler_contraction_d(N, 3, Target::Vector)?;
    Ok(d.compose(&r.compose(&partial)))
}

/// One scalar equation `a λ₂ + b μ₂ + c = 0`: the coefficient of `x^monomial · target`
/// in `d₃ r̃ ∂₃ (source)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ChainEquation {
    pub source: BasisIndex,
    pub target: BasisIndex,
    pub monomial: Vec<u32>,
    pub lambda2: Rational,
    pub mu2: Rational,
    pub constant: Rational,
}

impl std::fmt::Display for ChainEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lhs = Affine { constant: self.constant.clone(), lambda2: self.lambda2.clone(), mu2: self.mu2.clone() };
        let wedge = |b: Blade, up: bool| {
            let sym = if up { "e^" } else { "e_" };
            b.indices().map(|i| format!("{sym}{}", i + 1)).collect::<Vec<_>>().join("∧")
        };
        let mono: String = self
            .monomial
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
            .collect();
        write!(
            f,
            "{lhs} = 0  (coefficient of {mono}·{}⊗{} in the image of {}⊗{})",
            wedge(self.target.form, true),
            wedge(self.target.target, false),
            wedge(self.source.form, true),
            wedge(self.source.target, true),
        )
    }
}

/// Certificate that no member of the left-inverse family satisfies `d₃ r̃ ∂₃ = 0`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InfeasibilityCertificate {
    /// Number of scalar equations in the degree-2 piece.
    pub equations: usize,
    pub rank_homogeneous: usize,
    pub rank_augmented: usize,
    /// A subsystem with no solution.
    pub inconsistent_subsystem: Vec<ChainEquation>,
    /// `d₃ r̃ ∂₃ ≠ 0` at `λ₂ = μ₂ = 0`.
    pub residual_nonzero_at_origin: bool,
}

impl InfeasibilityCertificate {
    pub fn infeasible(&self) -> bool {
        self.rank_augmented > self.rank_homogeneous && subsystem_inconsistent(&self.inconsistent_subsystem)
    }
}

fn rank_of(eqs: &[[Rational; 3]], with_constant: bool) -> usize {
    let w = if with_constant { 3 } else { 2 };
    let mut e = Echelon::new();
    for row in eqs {
        e.insert(SparseVector::from_dense(&row[..w]));
    }
    e.rank()
}

fn subsystem_inconsistent(eqs: &[ChainEquation]) -> bool {
    let rows: Vec<[Rational; 3]> =
        eqs.iter().map(|e| [e.lambda2.clone(), e.mu2.clone(), e.constant.clone()]).collect();
    rank_of(&rows, true) > rank_of(&rows, false)
}

pub fn check_no_chain_left_inverse_deg2(
    basis: &EquivariantMapBasis,
    solution: &ConstraintSolution,
) -> Result<InfeasibilityCertificate, AppendixError> {
    let (zero, one) = (Rational::zero(), Rational::one());
    let r0 = basis.combination(&solution.at(&zero, &zero));
    let r_l = basis.combination(&solution.at(&one, &zero)).sub(&r0);
    let r_m = basis.combination(&solution.at(&zero, &one)).sub(&r0);
    let pieces: Vec<RationalMatrix> = [&r_l, &r_m, &r0]
        .into_iter()
        .map(|r| chain_residual(r).map(|c| c.graded_piece_matrix(0)))
        .collect::<Result<_, _>>()?;
    let src = GradedBasis::new(Space::new(N, 3, Target::Form(2)), 0);
    let tgt = GradedBasis::new(Space::new(N, 2, Target::Vector), 2);
    let nm = tgt.monomials().len();
    let dense: Vec<Vec<Vec<Rational>>> = pieces.iter().map(|m| m.to_dense()).collect();
    let mut rows = Vec::new();
    let mut located = Vec::new();
    for i in 0..tgt.len() {
        for j in 0..src.len() {
            let row = [dense[0][i][j].clone(), dense[1][i][j].clone(), dense[2][i][j].clone()];
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
                located.push((i, j));
            }
        }
    }
    let rank_homogeneous = rank_of(&rows, false);
    let rank_augmented = rank_of(&rows, true);
    // greedy: keep equations that raise the augmented rank until the subsystem is inconsistent
    let mut chosen: Vec<usize> = Vec::new();
    let mut kept: Vec<[Rational; 3]> = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut trial = kept.clone();
        trial.push(row.clone());
        if rank_of(&trial, true) > rank_of(&kept, true) {
            kept = trial;
            chosen.push(k);
            if rank_of(&kept, true) > rank_of(&kept, false) {
                break;
            }
        }
    }
    let inconsistent_subsystem = if rank_of(&kept, true) > rank_of(&kept, false) {
        chosen
            .iter()
            .map(|&k| {
                let (i, j) = located[k];
                let [lambda2, mu2, constant] = rows[k].clone();
                ChainEquation {
                    source: src.basis()[j],
                    target: tgt.basis()[i / nm],
                    monomial: tgt.monomials()[i % nm].exponents(N),
                    lambda2,
                    mu2,
                    constant,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(InfeasibilityCertificate {
        equations: rows.len(),
        rank_homogeneous,
        rank_augmented,
        inconsistent_subsystem,
        residual_nonzero_at_origin: !chain_residual(&r0)?.is_zero(),
    })
}

/// Dimension of the space of all `sp(4, ω)`-equivariant linear maps `Λ²V*⊗Λ²V* → Λ³V*⊗V`,
/// as the kernel of `X ↦ (X ρ₂(A) − ρ₁(A) X)_A` over the generators `A`.
pub fn commutant_dimension(omega: &SymplecticForm) -> Result<usize, AppendixError> {
    let (src, tgt) = (source_space(), target_space());
    let (ns, nt) = (src.rank(), tgt.rank());
    let sb = src.basis();
    let tb = tgt.basis();
    let coords = |t: &ExteriorTensor, basis: &[BasisIndex]| -> Vec<Rational> {
        basis.iter().map(|b| t.coeff(b).eval_origin()).collect()
    };
    let mut equations = Echelon::new();
    for a in sp4_generators(omega)? {
        // ρ₂(A): columns indexed by sb; ρ₁(A): columns indexed by tb
        let rho2: Vec<Vec<Rational>> =
            sb.iter().map(|b| sp_action(&a, &ExteriorTensor::unit(src, *b)).map(|t| coords(&t, &sb))).collect::<Result<_, _>>()?;
        let rho1: Vec<Vec<Rational>> =
            tb.iter().map(|b| nr_bracket(&a, &ExteriorTensor::unit(tgt, *b)).map(|t| coords(&t, &tb))).collect::<Result<_, _>>()?;
        // unknown X[i][j] at index i * ns + j; equation (i, j): Σ_k X[i][k] ρ₂[k][j] − Σ_k ρ₁[i][k] X[k][j]
        for i in 0..nt {
            for j in 0..ns {
                let mut pairs = Vec::new();
                for k in 0..ns {
                    let c = &rho2[j][k];
                    if !c.is_zero() {
                        pairs.push((i * ns + k, c.clone()));
                    }
                }
                for k in 0..nt {
                    let c = &rho1[k][i];
                    if !c.is_zero() {
                        pairs.push((k * ns + j, -c));
                    }
                }
                let v = SparseVector::from_pairs(pairs);
                if !v.is_zero() {
                    equations.insert(v);
                }
            }
        }
    }
    Ok(ns * nt - equations.rank())
}

/// Spanning check for `{ι_{e_i}μ ⊗ τ}` in `Λ^{n−1}V*⊗Λ²V*`, `μ` the volume form.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SpanningCertificate {
    pub n: usize,
    pub family_size: usize,
    pub rank: usize,
    pub dim: usize,
}

impl SpanningCertificate {
    pub fn spans(&self) -> bool {
        self.rank == self.dim
    }
}

pub fn check_top_degree_no_go(n: usize) -> SpanningCertificate {
    let space = Space::new(n, n.saturating_sub(1), Target::Form(2));
    let mu = ExteriorTensor::unit(Space::new(n, n, Target::Scalar), BasisIndex::new(Blade::full(n), Blade::EMPTY));
    let basis = space.basis();
    let mut e = Echelon::new();
    let mut family_size = 0;
    for i in 0..n {
        let iota = mu.contract(i);
        for tau in Target::Form(2).basis(n) {
            family_size += 1;
            let mut t = space.zero();
            for (b, p) in iota.terms() {
                t.add_term(BasisIndex::new(b.form, tau), p);
            }
            e.insert(SparseVector::from_dense(&basis.iter().map(|b| t.coeff(b).eval_origin()).collect::<Vec<_>>()));
        }
    }
    SpanningCertificate { n, family_size, rank: e.rank(), dim: space.rank() }
}
