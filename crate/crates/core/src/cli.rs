//! Batch jobs behind the `folia` binary: configuration, execution and report rendering.
//!
//! Reports contain no timings or paths other than those in the configuration, so the
//! same configuration always renders to the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::appendix::{
    build_equivariant_basis, check_no_chain_left_inverse_deg2, check_top_degree_no_go, commutant_dimension,
    is_left_inverse, solve_left_inverse_constraints, sp4_generators, AppendixError, ConstraintSolution,
};
use crate::families::{build_gl, build_glw, build_sl, build_sp, FamilyError, FamilySpec};
use crate::koszul::SymplecticForm;
use crate::multilinear::{BasisIndex, ExteriorTensor, Polynomial, Rational, Space, TermRecord, Target, VectorField};
use crate::report::{CheckResult, Verification};
use crate::tor::{
    isotropy_lie_algebra, isotropy_representation, syzygies_up_to, tor_report, Foliation, TorEntry, TorError,
};

#[derive(Debug, Error)]
pub enum JobError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Tor(#[from] TorError),
    #[error(transparent)]
    Appendix(#[from] AppendixError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Family,
    Tor,
    Appendix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// `gl`, `glw`, `sl` or `sp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<String>,
    /// Matrix `ω(e_i, e_j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Vec<Rational>>>,
    /// Spanning vectors of `W`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Vec<Rational>>>,
    pub cutoff: u32,
    pub verify: Verification,
    /// Only the top-degree spanning check (appendix).
    #[serde(default)]
    pub top_degree_only: bool,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            n: None,
            family: None,
            foliation: None,
            omega: None,
            w: None,
            cutoff: match command {
                Command::Tor => 6,
                _ => 4,
            },
            verify: Verification::Exhaustive,
            top_degree_only: false,
            format: Format::Text,
            output: None,
        }
    }

    /// Seed driving any random sampling; exhaustive runs sample with seed 0 where they
    /// fall back to random triples.
    pub fn seed(&self) -> u64 {
        match self.verify {
            Verification::Random { seed, .. } => seed,
            Verification::Exhaustive => 0,
        }
    }
}

/// Parses `exhaustive`, `random:COUNT` or `random:COUNT:SEED`.
pub fn parse_verification(s: &str, default_seed: u64) -> Result<Verification, JobError> {
    let bad = || JobError::Usage(format!("invalid verification level `{s}` (exhaustive | random:COUNT[:SEED])"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["exhaustive"] => Ok(Verification::Exhaustive),
        ["random", count] => Ok(Verification::Random { seed: default_seed, count: count.parse().map_err(|_| bad())? }),
        ["random", count, seed] => {
            Ok(Verification::Random { seed: seed.parse().map_err(|_| bad())?, count: count.parse().map_err(|_| bad())? })
        }
        _ => Err(bad()),
    }
}

/// Parses a JSON matrix whose entries are rational strings or integers.
pub fn parse_matrix(what: &str, s: &str) -> Result<Vec<Vec<Rational>>, JobError> {
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| JobError::Parse {
        path: format!("--{what}"),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let bad = || JobError::Usage(format!("--{what} must be a JSON array of arrays of rationals"));
    let rows = value.as_array().ok_or_else(bad)?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(t) => t.parse::<Rational>().map_err(|_| bad()),
                    serde_json::Value::Number(k) => k.as_i64().map(Rational::from).ok_or_else(bad),
                    _ => Err(bad()),
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct FoliationFile {
    dim: usize,
    generators: Vec<Vec<Vec<TermRecord>>>,
}

/// Parses the foliation format `{"dim": n, "generators": [[poly; n], …]}`.
pub fn parse_foliation(path: &str, text: &str) -> Result<Foliation, JobError> {
    let file: FoliationFile = serde_json::from_str(text).map_err(|e| JobError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.generators.is_empty() {
        return Err(JobError::Usage(format!("{path}: the generator list is empty")));
    }
    let mut fields = Vec::with_capacity(file.generators.len());
    for (a, g) in file.generators.iter().enumerate() {
        if g.len() != file.dim {
            return Err(JobError::Usage(format!(
                "{path}: generator {a} has {} components, expected {}",
                g.len(),
                file.dim
            )));
        }
        let comps = g
            .iter()
            .enumerate()
            .map(|(j, p)| {
                Polynomial::from_records(file.dim, p).ok_or_else(|| {
                    JobError::Usage(format!(
                        "{path}: generator {a}, component {j}: exponent arrays must have length {}",
                        file.dim
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        fields.push(VectorField::new(comps).map_err(|e| JobError::Usage(e.to_string()))?);
    }
    Ok(Foliation::new(file.dim, fields)?)
}

/// Serializes a foliation in the input format.
pub fn foliation_to_json(f: &Foliation) -> String {
    let file = FoliationFile {
        dim: f.dim(),
        generators: f.generators().iter().map(|g| g.components().iter().map(Polynomial::to_records).collect()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    /// `(form indices, target indices)`, 1-based.
    pub basis: (Vec<usize>, Vec<usize>),
    pub coeff: Vec<TermRecord>,
}

fn basis_tuple(b: &BasisIndex) -> (Vec<usize>, Vec<usize>) {
    (b.form.indices().map(|i| i + 1).collect(), b.target.indices().map(|i| i + 1).collect())
}

fn tensor_terms(t: &ExteriorTensor) -> Vec<TensorTerm> {
    t.terms().map(|(b, p)| TensorTerm { basis: basis_tuple(b), coeff: p.to_records() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    /// 1-based form indices.
    pub form: Vec<usize>,
    /// 0-based generator index.
    pub generator: usize,
    pub coefficient: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeRecord {
    pub degree: u32,
    pub text: String,
    pub terms: Vec<TensorTerm>,
    pub expansion: Vec<ExpansionTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorRecord {
    pub i: usize,
    pub dims_by_degree: Vec<usize>,
    pub total: usize,
    pub stabilized: bool,
    pub representatives: Vec<RepresentativeRecord>,
}

impl From<&TorEntry> for TorRecord {
    fn from(e: &TorEntry) -> Self {
        TorRecord {
            i: e.i,
            dims_by_degree: e.dims_by_degree.clone(),
            total: e.total,
            stabilized: e.stabilized,
            representatives: e
                .representatives
                .iter()
                .map(|r| RepresentativeRecord {
                    degree: r.degree,
                    text: r.tensor.to_string(),
                    terms: tensor_terms(&r.tensor),
                    expansion: r
                        .expansion
                        .iter()
                        .map(|g| ExpansionTerm {
                            form: g.form.indices().map(|i| i + 1).collect(),
                            generator: g.generator,
                            coefficient: g.coefficient.to_records(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub tag: String,
    pub n: usize,
    /// Labels from the top position down, ending with the image module.
    pub positions: Vec<String>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropySummary {
    pub dim: usize,
    pub abelian: bool,
    /// Nonzero structure constants as `[b_a, b_b] ∋ c·b_c` strings.
    pub brackets: Vec<String>,
    /// `(i, dim, trivial)` for every nonzero fiber.
    pub representations: Vec<(usize, usize, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallbackSummary {
    pub generators: usize,
    pub syzygies_up_to_cutoff: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutant_dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inconsistent_subsystem: Vec<String>,
    pub top_degree: (usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: JobConfig,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tor: Vec<TorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropy: Option<IsotropySummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<FallbackSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub appendix: Option<AppendixSummary>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = write!(s, "folia {}", serde_json::to_value(c.command).expect("enum").as_str().unwrap_or(""));
        if let Some(f) = &c.family {
            let _ = write!(s, " --type {f}");
        }
        if let Some(n) = c.n {
            let _ = write!(s, " --n {n}");
        }
        if let Some(p) = &c.foliation {
            let _ = write!(s, " {p}");
        }
        let _ = writeln!(s, " (cutoff {}, seed {})", c.cutoff, self.seed);
        if let Some(f) = &self.family {
            let _ = writeln!(s, "family {} n={}", f.tag, f.n);
            for (l, r) in f.positions.iter().zip(&f.ranks) {
                let _ = writeln!(s, "  {l:<24} rank {r}");
            }
        }
        for t in &self.tor {
            let _ = writeln!(
                s,
                "tor i={}: total {} by degree {:?}{}",
                t.i,
                t.total,
                t.dims_by_degree,
                if t.stabilized { "" } else { " (not stabilized)" }
            );
            for r in &t.representatives {
                let _ = writeln!(s, "    t={}: {}", r.degree, r.text);
            }
        }
        if let Some(iso) = &self.isotropy {
            let _ = writeln!(s, "isotropy algebra: dim {}, {}", iso.dim, if iso.abelian { "abelian" } else { "non-abelian" });
            for b in &iso.brackets {
                let _ = writeln!(s, "  {b}");
            }
            for (i, d, trivial) in &iso.representations {
                let _ = writeln!(s, "  action on fiber {i} (dim {d}): {}", if *trivial { "trivial" } else { "nontrivial" });
            }
        }
        if let Some(f) = &self.fallback {
            let _ = writeln!(s, "free-module check: {} generators, {} syzygies; {}", f.generators, f.syzygies_up_to_cutoff, f.verdict);
        }
        if let Some(a) = &self.appendix {
            if let (Some(l), Some(m), Some(v)) = (&a.lambda1, &a.mu1, &a.nu) {
                let _ = writeln!(s, "(λ₁,μ₁,ν) = ({l}, {m}, {v})");
            }
            if let Some(d) = a.commutant_dimension {
                let _ = writeln!(s, "equivariant maps: dimension {d}");
            }
            if !a.inconsistent_subsystem.is_empty() {
                let _ = writeln!(s, "chain-map condition infeasible; inconsistent equations:");
                for e in &a.inconsistent_subsystem {
                    let _ = writeln!(s, "  {e}");
                }
            }
            let (n, rank, dim) = a.top_degree;
            let _ = writeln!(s, "top degree n={n}: rank {rank} of {dim}");
        }
        for ch in &self.checks {
            let _ = writeln!(s, "{ch}");
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(s, "{} checks, {} failed", self.checks.len(), failed);
        s
    }
}

fn omega_from_matrix(m: &[Vec<Rational>]) -> Result<SymplecticForm, JobError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(JobError::Usage("ω must be a square matrix".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != -m[j][i].clone() {
                return Err(JobError::Usage(format!("ω is not antisymmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let space = Space::new(n, 2, Target::Scalar);
    let mut t = space.zero();
    for i in 0..n {
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                t.add_term(BasisIndex::scalar(&[i, j]), &Polynomial::constant(n, m[i][j].clone()));
            }
        }
    }
    SymplecticForm::new(t).map_err(|e| JobError::Usage(format!("invalid ω: {e}")))
}

fn run_family(config: &mut JobConfig) -> Result<Report, JobError> {
    let tag = config.family.clone().ok_or_else(|| JobError::Usage("family needs --type".into()))?;
    let n = config.n.ok_or_else(|| JobError::Usage("family needs --n".into()))?;
    let cutoff = config.cutoff;
    let spec: FamilySpec = match tag.as_str() {
        "gl" => build_gl(n, cutoff)?,
        "sl" => build_sl(n, cutoff)?,
        "glw" => {
            let w = config.w.get_or_insert_with(|| {
                let mut e1 = vec![Rational::zero(); n];
                if n > 0 {
                    e1[0] = Rational::one();
                }
                vec![e1]
            });
            build_glw(n, w.clone(), cutoff)?
        }
        "sp" => {
            let omega = match &config.omega {
                Some(m) => {
                    if m.len() != n {
                        return Err(JobError::Usage(format!("ω is {}×{} but n = {n}", m.len(), m.len())));
                    }
                    omega_from_matrix(m)?
                }
                None => {
                    let w = SymplecticForm::darboux(n).map_err(|e| JobError::Usage(format!("invalid ω: {e}")))?;
                    config.omega = Some(w.matrix());
                    w
                }
            };
            build_sp(omega, cutoff)?
        }
        other => return Err(JobError::Usage(format!("unknown family `{other}` (gl | glw | sl | sp)"))),
    };
    let checks = spec.verify(config.verify);
    let mut positions: Vec<String> = spec.complex.positions.iter().map(|p| p.label.clone()).collect();
    let ranks = spec.ranks();
    positions.truncate(ranks.len());
    Ok(Report {
        config: config.clone(),
        seed: config.seed(),
        checks,
        family: Some(FamilySummary { tag: spec.kind.tag(), n, positions, ranks }),
        tor: Vec::new(),
        isotropy: None,
        fallback: None,
        appendix: None,
    })
}

fn run_tor(config: &JobConfig, text: &str) -> Result<Report, JobError> {
    let path = config.foliation.clone().unwrap_or_else(|| "<input>".into());
    let f = parse_foliation(&path, text)?;
    let cutoff = config.cutoff;
    let mut report = Report {
        config: config.clone(),
        seed: config.seed(),
        checks: Vec::new(),
        family: None,
        tor: Vec::new(),
        isotropy: None,
        fallback: None,
        appendix: None,
    };
    if !f.is_homogeneous() {
        let syz = syzygies_up_to(&f, cutoff);
        let verdict = if syz.is_empty() {
            format!("no syzygies with coefficients of degree ≤ {cutoff}; consistent with a free module of rank {} up to the cutoff (not a proof)", f.generators().len())
        } else {
            format!("{} syzygies found; the module is not free", syz.len())
        };
        report.checks.push(CheckResult::pass_with("inhomogeneous generators: filtered free-module check", verdict.clone()));
        report.fallback =
            Some(FallbackSummary { generators: f.generators().len(), syzygies_up_to_cutoff: syz.len(), verdict });
        return Ok(report);
    }
    let tor = tor_report(&f, cutoff)?;
    let inv = &tor.involutivity;
    report.checks.push(match &inv.witness {
        None => CheckResult::pass_with("involutivity", format!("{} pairs", inv.pairs_checked)),
        Some((a, b, v)) => CheckResult::fail("involutivity", format!("[X{a}, X{b}] = {v} is not in the module")),
    });
    report.checks.push(if tor.euler_consistent {
        CheckResult::pass("Euler characteristic per degree")
    } else {
        CheckResult::fail("Euler characteristic per degree", "alternating sums differ")
    });
    report.tor = tor.entries.iter().map(TorRecord::from).collect();
    if f.is_linear() && inv.witness.is_none() {
        let alg = isotropy_lie_algebra(&f)?;
        report.checks.push(CheckResult::from_result(
            "isotropy Lie algebra axioms",
            alg.check_lie_axioms().map(|_| format!("dim {}", alg.dim())),
        ));
        let mut brackets = Vec::new();
        for a in 0..alg.dim() {
            for b in a + 1..alg.dim() {
                for c in 0..alg.dim() {
                    let k = &alg.structure[a][b][c];
                    if !k.is_zero() {
                        brackets.push(format!("[b{a}, b{b}] ∋ {k}·b{c}"));
                    }
                }
            }
        }
        let mut reps = Vec::new();
        for e in &tor.entries {
            if e.total == 0 {
                continue;
            }
            let rep = isotropy_representation(&f, &alg, e.i, cutoff)?;
            report.checks.push(CheckResult::from_result(
                format!("isotropy action on fiber {}", e.i),
                rep.check_representation(&alg).map(|_| format!("dim {}", rep.dim)),
            ));
            reps.push((e.i, rep.dim, rep.is_trivial()));
        }
        report.isotropy = Some(IsotropySummary { dim: alg.dim(), abelian: alg.is_abelian(), brackets, representations: reps });
    }
    Ok(report)
}

fn run_appendix(config: &mut JobConfig) -> Result<Report, JobError> {
    let n = *config.n.get_or_insert(4);
    if n < 2 || n % 2 != 0 || n > crate::multilinear::MAX_DIM {
        return Err(JobError::Usage(format!("top-degree check needs an even n in 2..={}", crate::multilinear::MAX_DIM)));
    }
    let mut checks = Vec::new();
    let top = check_top_degree_no_go(n);
    let top_check = |checks: &mut Vec<CheckResult>| {
        checks.push(if top.spans() {
            CheckResult::pass_with(
                format!("ι_{{e_i}}μ⊗τ span Λ^{}V*⊗Λ²V*", n - 1),
                format!("rank {} = {}", top.rank, top.dim),
            )
        } else {
            CheckResult::fail(format!("ι_{{e_i}}μ⊗τ span Λ^{}V*⊗Λ²V*", n - 1), format!("rank {} < {}", top.rank, top.dim))
        });
    };
    let mut summary = AppendixSummary {
        lambda1: None,
        mu1: None,
        nu: None,
        commutant_dimension: None,
        inconsistent_subsystem: Vec::new(),
        top_degree: (n, top.rank, top.dim),
    };
    if !config.top_degree_only {
        let basis = build_equivariant_basis();
        let gens = sp4_generators(basis.omega())?;
        checks.push(match basis.equivariance_defect(&gens)? {
            None => CheckResult::pass_with("p₁, p₂, q₁, q₂, s are equivariant", format!("{} generators of sp(4)", gens.len())),
            Some((m, g, b, r)) => CheckResult::fail(
                "p₁, p₂, q₁, q₂, s are equivariant",
                format!("{m} against generator {g} on {:?}: residual {r}", basis_tuple(&b)),
            ),
        });
        let rank = basis.rank();
        checks.push(if rank == 5 {
            CheckResult::pass("p₁, p₂, q₁, q₂, s are linearly independent")
        } else {
            CheckResult::fail("p₁, p₂, q₁, q₂, s are linearly independent", format!("rank {rank}"))
        });
        let dim = commutant_dimension(basis.omega())?;
        summary.commutant_dimension = Some(dim);
        checks.push(if dim == 5 {
            CheckResult::pass_with("equivariant maps Λ²V*⊗Λ²V* → Λ³V*⊗V", "dimension 5")
        } else {
            CheckResult::fail("equivariant maps Λ²V*⊗Λ²V* → Λ³V*⊗V", format!("dimension {dim}"))
        });
        let sol = solve_left_inverse_constraints(&basis)?;
        summary.lambda1 = Some(sol.lambda1.to_string());
        summary.mu1 = Some(sol.mu1.to_string());
        summary.nu = Some(sol.nu.to_string());
        checks.push(if sol == ConstraintSolution::closed_form() {
            CheckResult::pass_with("left-inverse constraints", format!("(λ₁,μ₁,ν) = ({}, {}, {})", sol.lambda1, sol.mu1, sol.nu))
        } else {
            CheckResult::fail("left-inverse constraints", format!("(λ₁,μ₁,ν) = ({}, {}, {})", sol.lambda1, sol.mu1, sol.nu))
        });
        let (zero, one) = (Rational::zero(), Rational::one());
        let r = basis.combination(&sol.at(&zero, &zero));
        let r2 = basis.combination(&sol.at(&one, &Rational::from(-3)));
        checks.push(if is_left_inverse(&r, basis.omega())? && is_left_inverse(&r2, basis.omega())? {
            CheckResult::pass_with("r̃∘φ₃ = id", "16×16 at (λ₂,μ₂) = (0,0) and (1,−3)")
        } else {
            CheckResult::fail("r̃∘φ₃ = id", "composite is not the identity")
        });
        let cert = check_no_chain_left_inverse_deg2(&basis, &sol)?;
        summary.inconsistent_subsystem = cert.inconsistent_subsystem.iter().map(|e| e.to_string()).collect();
        checks.push(if cert.infeasible() && cert.residual_nonzero_at_origin {
            CheckResult::pass_with(
                "no equivariant left inverse with d₃r̃∂₃ = 0",
                format!(
                    "{} equations, rank {} vs augmented {}",
                    cert.equations, cert.rank_homogeneous, cert.rank_augmented
                ),
            )
        } else {
            CheckResult::fail("no equivariant left inverse with d₃r̃∂₃ = 0", "a solution (λ₂, μ₂) exists")
        });
    }
    top_check(&mut checks);
    Ok(Report {
        config: config.clone(),
        seed: config.seed(),
        checks,
        family: None,
        tor: Vec::new(),
        isotropy: None,
        fallback: None,
        appendix: Some(summary),
    })
}

/// Runs a job; `foliation_text` is the content of the foliation file for `tor`.
pub fn run_with_input(config: &JobConfig, foliation_text: Option<&str>) -> Result<Report, JobError> {
    let mut config = config.clone();
    match config.command {
        Command::Family => run_family(&mut config),
        Command::Tor => {
            let text = foliation_text.ok_or_else(|| JobError::Usage("tor needs a foliation file".into()))?;
            run_tor(&config, text)
        }
        Command::Appendix => run_appendix(&mut config),
    }
}

/// Runs a job, reading the foliation file from disk when needed.
pub fn run(config: &JobConfig) -> Result<Report, JobError> {
    match (&config.command, &config.foliation) {
        (Command::Tor, Some(p)) => {
            let text = std::fs::read_to_string(Path::new(p))
                .map_err(|e| JobError::Io { path: p.clone(), message: e.to_string() })?;
            run_with_input(config, Some(&text))
        }
        _ => run_with_input(config, None),
    }
}
