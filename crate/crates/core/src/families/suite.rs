//! Verification suites: the identities each family must satisfy, checked exactly.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::brackets::{linf_degree, nr_bracket};
use crate::koszul::{negative_euler_partial, partial_trace_phi, GradedLinearMap};
use crate::multilinear::{ExteriorTensor, Rational, Target};
use crate::report::{CheckResult, Verification};
use crate::sampling::{random_combination, rng};

use super::{FamilyError, FamilyKind, FamilySpec, SpStructure};

/// Sum of two tensors where a zero summand may live in any space.
pub fn lenient_add(a: &ExteriorTensor, b: &ExteriorTensor) -> ExteriorTensor {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else {
        a.add(b)
    }
}

/// Equality where all zero tensors are equal.
pub fn lenient_eq(a: &ExteriorTensor, b: &ExteriorTensor) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

fn sign(odd: bool) -> Rational {
    Rational::from(if odd { -1 } else { 1 })
}

/// Samples used when a suite falls back to random inputs.
const FALLBACK: Verification = Verification::Random { seed: 0, count: 20 };

type Pair = (ExteriorTensor, ExteriorTensor);
type Triple = (ExteriorTensor, ExteriorTensor, ExteriorTensor);

/// Runs `f` on every case in parallel; the first failing case (in input order) wins.
fn run_cases<T: Sync>(
    name: &str,
    cases: &[T],
    f: impl Fn(&T) -> Result<Option<String>, FamilyError> + Sync,
) -> CheckResult {
    let outcomes: Vec<Result<Option<String>, FamilyError>> = cases.par_iter().map(&f).collect();
    for o in outcomes {
        match o {
            Ok(None) => {}
            Ok(Some(w)) => return CheckResult::fail(name, w),
            Err(e) => return CheckResult::fail(name, e.to_string()),
        }
    }
    CheckResult::pass_with(name, format!("{} cases", cases.len()))
}

impl FamilySpec {
    /// Graded Jacobiator of `ℓ₂`.
    pub fn jacobiator(
        &self,
        a: &ExteriorTensor,
        b: &ExteriorTensor,
        c: &ExteriorTensor,
    ) -> Result<ExteriorTensor, FamilyError> {
        let (da, db, dc) = (linf_degree(a), linf_degree(b), linf_degree(c));
        let t1 = self.bracket(&self.bracket(a, b)?, c)?;
        let t2 = self.bracket(&self.bracket(b, c)?, a)?.scale(&sign((da * (db + dc)).rem_euclid(2) == 1));
        let t3 = self.bracket(&self.bracket(c, a)?, b)?.scale(&sign((dc * (da + db)).rem_euclid(2) == 1));
        Ok(lenient_add(&lenient_add(&t1, &t2), &t3))
    }

    /// `ℓ₁[a,b] − [ℓ₁a, b] − (−1)^{|a|}[a, ℓ₁b]`.
    pub fn derivation_defect(&self, a: &ExteriorTensor, b: &ExteriorTensor) -> Result<ExteriorTensor, FamilyError> {
        let ab = self.bracket(a, b)?;
        let mut defect = self.differential(&ab).unwrap_or_else(|| ab.space().zero());
        if let Some(da) = self.differential(a) {
            defect = lenient_add(&defect, &self.bracket(&da, b)?.neg());
        }
        if let Some(db) = self.differential(b) {
            let s = sign(linf_degree(a).rem_euclid(2) == 1);
            defect = lenient_add(&defect, &self.bracket(a, &db)?.scale(&-s));
        }
        Ok(defect)
    }

    fn random_element<R: Rng>(&self, r: &mut R, gens: &[ExteriorTensor]) -> ExteriorTensor {
        let deg = r.gen_range(0..=1);
        let terms = r.gen_range(1..=3);
        random_combination(r, gens, deg, terms)
    }

    /// Positions usable as inputs, filtered by `keep`.
    fn input_positions(&self, keep: impl Fn(&ExteriorTensor) -> bool) -> Vec<&[ExteriorTensor]> {
        self.generators().into_iter().filter(|g| !g.is_empty() && keep(&g[0])).collect()
    }

    fn pairs(&self, v: Verification) -> Vec<Pair> {
        self.pairs_where(v, &|_| true)
    }

    fn pairs_where(&self, v: Verification, keep: &dyn Fn(&ExteriorTensor) -> bool) -> Vec<Pair> {
        let pos = self.input_positions(keep);
        if pos.is_empty() {
            return Vec::new();
        }
        match v {
            Verification::Exhaustive => {
                let all: Vec<&ExteriorTensor> = pos.iter().flat_map(|g| g.iter()).collect();
                all.iter().flat_map(|a| all.iter().map(move |b| ((*a).clone(), (*b).clone()))).collect()
            }
            Verification::Random { seed, count } => {
                let mut r = rng(seed);
                (0..count)
                    .map(|_| {
                        let (ga, gb) = (*pos.choose(&mut r).expect("inputs"), *pos.choose(&mut r).expect("inputs"));
                        (self.random_element(&mut r, ga), self.random_element(&mut r, gb))
                    })
                    .collect()
            }
        }
    }

    /// Triples with entries drawn from `slots[i]`-filtered positions.
    fn triples(&self, v: Verification, keep: [&dyn Fn(&ExteriorTensor) -> bool; 3]) -> Vec<Triple> {
        let pos: Vec<Vec<&[ExteriorTensor]>> = keep.iter().map(|k| self.input_positions(k)).collect();
        if pos.iter().any(|p| p.is_empty()) {
            return Vec::new();
        }
        match v {
            Verification::Exhaustive => {
                let all: Vec<Vec<&ExteriorTensor>> =
                    pos.iter().map(|p| p.iter().flat_map(|g| g.iter()).collect()).collect();
                let mut out = Vec::new();
                for a in &all[0] {
                    for b in &all[1] {
                        for c in &all[2] {
                            out.push(((*a).clone(), (*b).clone(), (*c).clone()));
                        }
                    }
                }
                out
            }
            Verification::Random { seed, count } => {
                let mut r = rng(seed);
                (0..count)
                    .map(|_| {
                        let g: Vec<&[ExteriorTensor]> =
                            pos.iter().map(|p| *p.choose(&mut r).expect("inputs")).collect();
                        (
                            self.random_element(&mut r, g[0]),
                            self.random_element(&mut r, g[1]),
                            self.random_element(&mut r, g[2]),
                        )
                    })
                    .collect()
            }
        }
    }

    /// Runs the full identity suite of this family.
    pub fn verify(&self, v: Verification) -> Vec<CheckResult> {
        let mut out = vec![
            CheckResult::pass_with(
                format!("exactness (cutoff {})", self.certificate.cutoff),
                format!("{} graded pieces", self.certificate.cells_checked),
            ),
            CheckResult::from_result("d∘d = 0", self.complex.check_composites().map(|_| String::new())),
            CheckResult::from_result("differentials preserve the subspaces", self.complex.check_subspaces().map(|_| String::new())),
            self.check_minimal(),
        ];
        for p in &self.projectors {
            out.push(CheckResult::from_result(
                format!("projector onto K{}", p.space().form_degree),
                p.check().map(|_| format!("rank {}", p.dim())),
            ));
        }
        match &self.kind {
            FamilyKind::Glw(_) | FamilyKind::Sl => out.push(self.check_closure()),
            _ => {}
        }
        if self.kind == FamilyKind::Sl {
            out.extend(self.check_sl_phi());
        }
        match self.sp_structure() {
            None => {
                let any: &dyn Fn(&ExteriorTensor) -> bool = &|_| true;
                out.push(run_cases("ℓ₁ is a derivation of ℓ₂", &self.pairs(v), |(a, b)| {
                    let r = self.derivation_defect(a, b)?;
                    Ok((!r.is_zero()).then(|| format!("a = {a}; b = {b}; defect = {r}")))
                }));
                out.push(run_cases("graded Jacobi identity", &self.triples(v, [any, any, any]), |(a, b, c)| {
                    let j = self.jacobiator(a, b, c)?;
                    Ok((!j.is_zero()).then(|| format!("a = {a}; b = {b}; c = {c}; jacobiator = {j}")))
                }));
            }
            Some(sp) => out.extend(self.verify_sp(sp, v)),
        }
        out
    }

    fn check_minimal(&self) -> CheckResult {
        let k = self.complex.differentials.len();
        for (i, d) in self.complex.differentials.iter().enumerate() {
            for g in &self.complex.positions[i].basis {
                let v = d.apply(g).eval_origin();
                if !v.is_zero() && i + 1 < k {
                    return CheckResult::fail("minimal at the origin", format!("{} on {g}: {v}", d.name()));
                }
            }
        }
        CheckResult::pass("minimal at the origin")
    }

    /// The restricted Nijenhuis–Richardson bracket of two `K` generators lies in `K`.
    fn check_closure(&self) -> CheckResult {
        let gens: Vec<&ExteriorTensor> = self
            .generators()
            .into_iter()
            .flat_map(|g| g.iter())
            .filter(|g| g.target() == Target::Vector)
            .collect();
        let pairs: Vec<(&ExteriorTensor, &ExteriorTensor)> =
            gens.iter().flat_map(|a| gens.iter().map(move |b| (*a, *b))).collect();
        run_cases("bracket closes on the K subspaces", &pairs, |(a, b)| {
            let c = nr_bracket(a, b)?;
            let p = c.form_degree();
            if c.is_zero() || p > self.n {
                return Ok(None);
            }
            let ok = self.projectors[p - 1].contains(&c);
            Ok((!ok).then(|| format!("a = {a}; b = {b}; [a,b] = {c} ∉ K{p}")))
        })
    }

    fn check_sl_phi(&self) -> Vec<CheckResult> {
        let n = self.n;
        let mut out = Vec::new();
        let mut bad = None;
        for k in 2..=n {
            let phi_k = partial_trace_phi(n, k).expect("in range");
            let phi_km = partial_trace_phi(n, k - 1).expect("in range");
            let d = crate::koszul::euler_contraction_d(n, k, Target::Vector).expect("in range");
            let del = negative_euler_partial(n, k - 1, Target::Scalar).expect("in range");
            let s: GradedLinearMap = phi_km.compose(&d).add(&del.compose(&phi_k));
            if !s.is_zero() {
                bad = Some(format!("k = {k}"));
                break;
            }
        }
        out.push(match bad {
            None => CheckResult::pass("φ∘d + ∂∘φ = 0"),
            Some(w) => CheckResult::fail("φ∘d + ∂∘φ = 0", w),
        });
        let mut ranks = Vec::new();
        let mut fail = None;
        for k in 1..=n {
            let r = partial_trace_phi(n, k).expect("in range").constant_matrix().rank();
            ranks.push(r);
            if r != crate::multilinear::binomial(n, k - 1) {
                fail = Some(format!("rank φ{k} = {r}"));
            }
        }
        out.push(match fail {
            None => CheckResult::pass_with("φ_k surjective, φ_n invertible", format!("ranks {ranks:?}")),
            Some(w) => CheckResult::fail("φ_k surjective, φ_n invertible", w),
        });
        out
    }

    fn verify_sp(&self, sp: &SpStructure, v: Verification) -> Vec<CheckResult> {
        let n = self.n;
        let mut out = Vec::new();
        let gens = self.generators();
        let sp_dim = gens[gens.len() - 1].len();
        out.push(if sp_dim == n * (n + 1) / 2 {
            CheckResult::pass_with("dim ker φ^ω₁ = n(n+1)/2", sp_dim.to_string())
        } else {
            CheckResult::fail("dim ker φ^ω₁ = n(n+1)/2", sp_dim.to_string())
        });
        let phi2 = sp.phi(2).constant_matrix();
        out.push(if phi2.nrows() == phi2.ncols() && phi2.rank() == phi2.nrows() {
            CheckResult::pass_with("φ^ω₂ invertible", format!("{}×{}", phi2.nrows(), phi2.ncols()))
        } else {
            CheckResult::fail("φ^ω₂ invertible", format!("rank {}", phi2.rank()))
        });
        out.push(if sp.phi2_inverse().constant_matrix() == sp.r(1).constant_matrix() {
            CheckResult::pass("(φ^ω₂)⁻¹ = r^ω₁")
        } else {
            CheckResult::fail("(φ^ω₂)⁻¹ = r^ω₁", "matrices differ")
        });
        let bad = (1..n).find(|&p| !sp.r(p).compose(sp.phi(p + 1)).constant_matrix().is_identity());
        out.push(match bad {
            None => CheckResult::pass_with("r^ω_p ∘ φ^ω_{p+1} = id", format!("p = 1..{}", n - 1)),
            Some(p) => CheckResult::fail("r^ω_p ∘ φ^ω_{p+1} = id", format!("p = {p}")),
        });

        let pairs = self.pairs(v);
        let c3: &dyn Fn(&ExteriorTensor) -> bool = &|t| t.target() == Target::Form(2) && t.form_degree() == 2;
        let derivation = |(a, b): &Pair| -> Result<Option<String>, FamilyError> {
            let r = self.derivation_defect(a, b)?;
            Ok((!r.is_zero()).then(|| format!("a = {a}; b = {b}; defect = {r}")))
        };
        out.push(run_cases("ℓ₁ is a derivation of ⟦−,−⟧", &pairs, derivation));
        let pv = match v {
            Verification::Exhaustive if n > 4 => FALLBACK,
            _ => v,
        };
        out.push(run_cases("ℓ₁ is a derivation of ⟦−,−⟧ on C₃ × C₃", &self.pairs_where(pv, c3), derivation));
        out.push(run_cases("⟦−,−⟧ well defined on classes", &pairs, |(a, b)| {
            if a.target() != Target::Form(2) || a.form_degree() + 1 > n {
                return Ok(None);
            }
            let phi = sp.phi(a.form_degree() + 1);
            let shift = phi.apply(&crate::sampling::random_tensor(
                &mut rng(a.num_terms() as u64),
                phi.source(),
                a.coefficient_degree().unwrap_or(0),
                2,
            ));
            let a2 = a.add(&shift);
            let (x, y) = (self.bracket(a, b)?, self.bracket(&a2, b)?);
            Ok((!lenient_eq(&x, &y)).then(|| format!("a = {a}; a + φ(·) = {a2}; b = {b}")))
        }));

        let is_zero_deg: &dyn Fn(&ExteriorTensor) -> bool = &|t| t.target() == Target::Vector;
        let any: &dyn Fn(&ExteriorTensor) -> bool = &|_| true;
        let neg: &dyn Fn(&ExteriorTensor) -> bool = &|t| t.target() == Target::Form(2);
        let tv = match v {
            Verification::Exhaustive if n > 2 => FALLBACK,
            _ => v,
        };
        let mut deg0 = self.triples(tv, [is_zero_deg, any, any]);
        deg0.extend(self.triples(tv, [any, is_zero_deg, any]));
        deg0.extend(self.triples(tv, [any, any, is_zero_deg]));
        out.push(run_cases("Jacobi identity with an entry of degree 0", &deg0, |(a, b, c)| {
            let j = self.jacobiator(a, b, c)?;
            Ok((!j.is_zero()).then(|| format!("a = {a}; b = {b}; c = {c}; jacobiator = {j}")))
        }));

        let negs = self.triples(tv, [neg, neg, neg]);
        if n <= 4 {
            out.push(run_cases("ternary bracket vanishes", &negs, |(a, b, c)| {
                let t = sp.ternary(a, b, c)?;
                Ok((!t.is_zero()).then(|| format!("a = {a}; b = {b}; c = {c}; ternary = {t}")))
            }));
            out.push(run_cases("Jacobi identity in negative degrees", &negs, |(a, b, c)| {
                let j = self.jacobiator(a, b, c)?;
                Ok((!j.is_zero()).then(|| format!("a = {a}; b = {b}; c = {c}; jacobiator = {j}")))
            }));
        } else {
            out.push(self.jacobiator_witness(sp));
            let homotopy = |(a, b, c): &Triple| -> Result<Option<String>, FamilyError> {
                let j = sp.jacobiator(a, b, c)?;
                let rhs = sp.homotopy_rhs(a, b, c)?;
                Ok((!lenient_eq(&j, &rhs))
                    .then(|| format!("a = {a}; b = {b}; c = {c}; residual = {}", lenient_add(&j, &rhs.neg()))))
            };
            out.push(run_cases("homotopy identity on C₃ × C₃ × C₃", &self.triples(tv, [c3, c3, c3]), homotopy));
            out.push(run_cases("homotopy identity in negative degrees", &negs, homotopy));
        }
        if n >= 4 {
            let c3 = gens[gens.len() - 2];
            out.push(match sp.non_derivation_witness(c3) {
                Some(w) => CheckResult::pass_with(
                    "∂̄ is not a derivation of {−,−}",
                    format!(
                        "ω₁ = {}; ω₂ = {}; residue = {}; rank im φ^ω₃ {} → {}",
                        w.omega1, w.omega2, w.residue, w.rank_image, w.rank_with_combination
                    ),
                ),
                None => CheckResult::fail("∂̄ is not a derivation of {−,−}", "no witness among generator pairs"),
            });
        }
        out
    }

    /// First triple of constant `C₃` generators with a nonzero Jacobiator.
    fn jacobiator_witness(&self, sp: &SpStructure) -> CheckResult {
        let gens = self.generators();
        let c3 = gens[gens.len() - 2];
        let name = "Jacobiator of ⟦−,−⟧ is nonzero";
        for (i, a) in c3.iter().enumerate() {
            let found = c3[i..].par_iter().find_map_first(|b| {
                c3.iter().find_map(|c| {
                    let j = sp.jacobiator(a, b, c).ok()?;
                    (!j.is_zero()).then(|| format!("a = {a}; b = {b}; c = {c}; jacobiator = {j}"))
                })
            });
            if let Some(w) = found {
                return CheckResult::pass_with(name, w);
            }
        }
        CheckResult::fail(name, "Jacobiator vanishes on all generator triples")
    }
}
