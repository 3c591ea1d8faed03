//! End-to-end acceptance checks, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL` line (visible with `--nocapture`) before asserting.

use std::process::Command as Process;
use std::time::Instant;

use folia::appendix::{
    build_equivariant_basis, check_no_chain_left_inverse_deg2, check_top_degree_no_go, commutant_dimension,
    is_left_inverse, solve_left_inverse_constraints, sp4_generators, ConstraintSolution,
};
use folia::cli::{run, Command, Format, JobConfig};
use folia::families::{build_gl, build_glw, build_sl, build_sp, FamilySpec};
use folia::koszul::{koszul_complex, SymplecticForm, Terminal};
use folia::linalg::{RationalMatrix, SparseVector};
use folia::multilinear::{binomial, BasisIndex, ExteriorTensor, Polynomial, Rational, Space, Target, VectorField};
use folia::report::{CheckResult, Verification};
use folia::tor::{isotropy_lie_algebra, isotropy_representation, tor_report, Foliation, TorComplex};

fn line(k: u32, ok: bool, detail: impl AsRef<str>) -> bool {
    println!("criterion {k}: {} ({})", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    ok
}

fn failures(checks: &[CheckResult]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed()).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect()
}

fn has(checks: &[CheckResult], name: &str) -> bool {
    checks.iter().any(|c| c.name == name && c.passed())
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

#[test]
fn criterion_1_koszul_exactness() {
    let t = Instant::now();
    let mut cells = 0;
    let mut errors = Vec::new();
    for n in 1..=4 {
        for (target, terminal) in
            [(Target::Scalar, Terminal::Ideal), (Target::Scalar, Terminal::Evaluation), (Target::Vector, Terminal::Ideal)]
        {
            match koszul_complex(n, target, terminal).exactness_certificate(5) {
                Ok(c) => cells += c.cells_checked,
                Err(e) => errors.push(e.to_string()),
            }
        }
    }
    let ok = errors.is_empty() && t.elapsed().as_secs() < 30;
    line(1, ok, format!("{cells} graded pieces exact, n = 1..4, degree ≤ 5, {:?}; {errors:?}", t.elapsed()));
    assert!(ok);
}

#[test]
fn criterion_2_gl_dg_lie() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=4 {
        let v = if n <= 3 { Verification::Exhaustive } else { Verification::Random { seed: 2, count: 200 } };
        let spec = build_gl(n, 3).unwrap();
        let checks = spec.verify(v);
        if !has(&checks, "ℓ₁ is a derivation of ℓ₂") || !has(&checks, "graded Jacobi identity") {
            bad.push(format!("n={n}: derivation/Jacobi missing"));
        }
        bad.extend(failures(&checks).into_iter().map(|f| format!("n={n}: {f}")));
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 120;
    line(2, ok, format!("exhaustive n ≤ 3, 200 random at n = 4, {:?}; {bad:?}", t.elapsed()));
    assert!(ok);
}

fn module_parts(f: &Foliation, upto: u32) -> Vec<Vec<ExteriorTensor>> {
    (0..=upto).map(|s| f.module_basis(s).unwrap()).collect()
}

#[test]
fn criterion_3_glw() {
    let mut bad = Vec::new();
    // n = 2, W = span(e₁): the anchor image is ⟨x∂x, y∂x, y∂y⟩
    let spec = build_glw(2, vec![unit(2, 0)], 4).unwrap();
    let image = Foliation::from_family(&spec).unwrap();
    let expected = Foliation::new(
        2,
        vec![
            VectorField::directional(2, 0, x(2, 0)),
            VectorField::directional(2, 0, x(2, 1)),
            VectorField::directional(2, 1, x(2, 1)),
        ],
    )
    .unwrap();
    if module_parts(&image, 2) != module_parts(&expected, 2) {
        bad.push("anchor image differs from ⟨x∂x, y∂x, y∂y⟩".to_string());
    }
    bad.extend(failures(&spec.verify(Verification::Exhaustive)));
    // every coordinate subspace and one skew subspace, n ≤ 4
    let mut built = 0;
    for n in 1..=4usize {
        let mut ws: Vec<Vec<Vec<Rational>>> =
            (0..1u32 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| unit(n, i)).collect()).collect();
        if n >= 2 {
            let mut v = unit(n, 0);
            v[1] = Rational::from(3);
            ws.push(vec![v]);
        }
        for w in ws {
            match build_glw(n, w.clone(), 4) {
                Ok(spec) => {
                    built += 1;
                    if spec.certificate.cells_checked == 0 {
                        bad.push(format!("n={n}, W={w:?}: empty certificate"));
                    }
                }
                Err(e) => bad.push(format!("n={n}, W={w:?}: {e}")),
            }
        }
    }
    let ok = bad.is_empty();
    line(3, ok, format!("module equality in degrees ≤ 2; {built} subspaces W exact to degree 4; {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_4_sl() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=4usize {
        let spec = build_sl(n, 5).unwrap();
        // rank oracle: K_j = ker φ_j has dim n·C(n,j) − C(n,j−1) for j < n
        let mut expected: Vec<usize> = (1..n).map(|j| n * binomial(n, j) - binomial(n, j - 1)).collect();
        expected.push(1);
        expected.reverse();
        if spec.ranks() != expected {
            bad.push(format!("n={n}: ranks {:?} ≠ {expected:?}", spec.ranks()));
        }
        let v = if n <= 3 { Verification::Exhaustive } else { Verification::Random { seed: 4, count: 50 } };
        let checks = spec.verify(v);
        for name in [
            "φ∘d + ∂∘φ = 0",
            "φ_k surjective, φ_n invertible",
            "bracket closes on the K subspaces",
            "graded Jacobi identity",
            "ℓ₁ is a derivation of ℓ₂",
        ] {
            if !has(&checks, name) {
                bad.push(format!("n={n}: `{name}` missing or failed"));
            }
        }
        bad.extend(failures(&checks).into_iter().map(|f| format!("n={n}: {f}")));
    }
    let ok = bad.is_empty();
    line(4, ok, format!("n = 2..4, exact to degree 5, {:?}; {bad:?}", t.elapsed()));
    assert!(ok);
}

#[test]
fn criterion_5_sp() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in [2usize, 4, 6] {
        let spec = build_sp(SymplecticForm::darboux(n).unwrap(), 3).unwrap();
        let sp_rank = *spec.ranks().last().unwrap();
        if sp_rank != n * (n + 1) / 2 {
            bad.push(format!("n={n}: dim sp = {sp_rank}"));
        }
        let v = if n <= 4 { Verification::Exhaustive } else { Verification::Random { seed: 6, count: 20 } };
        let checks = spec.verify(v);
        let mut required = vec![
            "dim ker φ^ω₁ = n(n+1)/2",
            "(φ^ω₂)⁻¹ = r^ω₁",
            "ℓ₁ is a derivation of ⟦−,−⟧",
            "Jacobi identity with an entry of degree 0",
        ];
        if n <= 4 {
            required.push("ternary bracket vanishes");
        } else {
            required.extend(["Jacobiator of ⟦−,−⟧ is nonzero", "homotopy identity on C₃ × C₃ × C₃", "homotopy identity in negative degrees"]);
        }
        for name in required {
            if !has(&checks, name) {
                bad.push(format!("n={n}: `{name}` missing or failed"));
            }
        }
        if !checks.iter().any(|c| c.name.starts_with("φ^ω₂ invertible") && c.passed()) {
            bad.push(format!("n={n}: φ^ω₂ invertibility missing"));
        }
        if !checks.iter().any(|c| c.name.starts_with("r^ω_p ∘ φ^ω_{p+1} = id") && c.passed()) {
            bad.push(format!("n={n}: r∘φ = id missing"));
        }
        if n == 6 {
            let homotopy = checks.iter().find(|c| c.name == "homotopy identity on C₃ × C₃ × C₃");
            if homotopy.and_then(|c| c.witness.clone()) != Some("20 cases".into()) {
                bad.push(format!("n=6: homotopy sample size {:?}", homotopy.map(|c| c.witness.clone())));
            }
        }
        bad.extend(failures(&checks).into_iter().map(|f| format!("n={n}: {f}")));
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 600;
    line(5, ok, format!("n ∈ {{2, 4, 6}}, {:?}; {bad:?}", t.elapsed()));
    assert!(ok);
}

#[test]
fn criterion_6_tor_worked_example() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let f1 = Foliation::new(
        2,
        vec![VectorField::directional(2, 0, x(2, 0)), VectorField::directional(2, 0, x(2, 1))],
    )
    .unwrap();
    let report = tor_report(&f1, 6).unwrap();
    if report.totals() != vec![2, 1, 0] {
        bad.push(format!("fiber dims {:?}", report.totals()));
    }
    // γ = dx⊗y∂x − dy⊗x∂x
    let space = Space::new(2, 1, Target::Vector);
    let mut gamma = space.zero();
    gamma.add_term(BasisIndex::vector(&[0], 0), &x(2, 1));
    gamma.add_term(BasisIndex::vector(&[1], 0), &x(2, 0).neg());
    let complex = TorComplex::new(&f1, 6).unwrap();
    match report.entries[1].representatives.as_slice() {
        [rep] => match complex.proportional_mod_boundaries(&rep.tensor, &gamma) {
            Some(c) if !c.is_zero() => {}
            other => bad.push(format!("representative {} is not a multiple of γ: {other:?}", rep.tensor)),
        },
        reps => bad.push(format!("{} representatives for i = 1", reps.len())),
    }
    let alg = isotropy_lie_algebra(&f1).unwrap();
    if alg.dim() != 2 || alg.is_abelian() || alg.check_lie_axioms().is_err() {
        bad.push(format!("isotropy algebra dim {} abelian {}", alg.dim(), alg.is_abelian()));
    }
    let rho1 = isotropy_representation(&f1, &alg, 1, 6).unwrap();
    if rho1.dim != 1 || !rho1.is_trivial() {
        bad.push("action on (E₁)_p is not trivial".into());
    }
    // adjoint oracle: ad(a)[c][b] is the b_c-coordinate of [b_a, b_b], computed from vector fields
    let d = alg.dim();
    let ad: Vec<RationalMatrix> = (0..d)
        .map(|a| {
            let mut m = RationalMatrix::zeros(d, d);
            for b in 0..d {
                let br = folia::multilinear::vf_bracket(&alg.basis[a], &alg.basis[b]).unwrap();
                let coords = alg.coordinates(&br).unwrap();
                for (c, v) in coords.into_iter().enumerate() {
                    m.set(c, b, v);
                }
            }
            m
        })
        .collect();
    let rho0 = isotropy_representation(&f1, &alg, 0, 6).unwrap();
    if rho0.check_representation(&alg).is_err() || !intertwined(&rho0.matrices, &ad) {
        bad.push("(E₀)_p is not the adjoint representation".into());
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 5;
    line(6, ok, format!("F₁ dims (2,1,0), γ class, non-abelian isotropy, trivial on E₁, adjoint on E₀, {:?}; {bad:?}", t.elapsed()));
    assert!(ok);
}

/// Whether some invertible `T` satisfies `T ρ(a) = σ(a) T` for all `a`.
fn intertwined(rho: &[RationalMatrix], sigma: &[RationalMatrix]) -> bool {
    let d = rho[0].nrows();
    let mut rows = Vec::new();
    for (r, s) in rho.iter().zip(sigma) {
        // (Tρ − σT)[i][j] = Σ_k T[i][k] ρ[k][j] − σ[i][k] T[k][j], T[i][j] at i*d + j
        for i in 0..d {
            for j in 0..d {
                let mut pairs = Vec::new();
                for k in 0..d {
                    pairs.push((i * d + k, r.get(k, j)));
                    pairs.push((k * d + j, -s.get(i, k)));
                }
                rows.push(SparseVector::from_pairs(pairs));
            }
        }
    }
    let kernel = RationalMatrix::from_rows(d * d, rows).kernel();
    // a generic integer combination of the kernel basis
    let mut t = vec![Rational::zero(); d * d];
    for (w, k) in kernel.iter().enumerate() {
        for (idx, v) in k.entries() {
            t[*idx] += &(v * &Rational::from(w as i64 * 7 + 1));
        }
    }
    let dense: Vec<Vec<Rational>> = (0..d).map(|i| t[i * d..(i + 1) * d].to_vec()).collect();
    !RationalMatrix::from_dense(&dense).determinant().is_zero()
}

#[test]
fn criterion_7_tor_vs_resolutions() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 1..=4usize {
        let mut specs: Vec<(String, FamilySpec)> = vec![
            ("gl".into(), build_gl(n, 2).unwrap()),
            ("glw(e₁)".into(), build_glw(n, vec![unit(n, 0)], 2).unwrap()),
        ];
        if n >= 2 {
            specs.push(("sl".into(), build_sl(n, 2).unwrap()));
            specs.push(("glw(e₁,e₂)".into(), build_glw(n, vec![unit(n, 0), unit(n, 1)], 2).unwrap()));
        }
        if n % 2 == 0 {
            specs.push(("sp".into(), build_sp(SymplecticForm::darboux(n).unwrap(), 2).unwrap()));
        }
        for (name, spec) in specs {
            cases += 1;
            let fol = Foliation::from_family(&spec).unwrap();
            let tor = tor_report(&fol, n as u32 + 2).unwrap();
            let mut fibers = spec.fiber_ranks();
            fibers.resize(n + 1, 0);
            if tor.totals() != fibers {
                bad.push(format!("{name} n={n}: Tor {:?} vs resolution {fibers:?}", tor.totals()));
            }
            if name == "gl" {
                // free-module oracle: (E_i)_p = Λ^{i+1}V*⊗V
                let oracle: Vec<usize> = (0..=n).map(|i| if i < n { n * binomial(n, i + 1) } else { 0 }).collect();
                if tor.totals() != oracle {
                    bad.push(format!("gl n={n}: Tor {:?} vs n·C(n,i+1) {oracle:?}", tor.totals()));
                }
            }
        }
    }
    let ok = bad.is_empty();
    line(7, ok, format!("{cases} families with n ≤ 4, {:?}; {bad:?}", t.elapsed()));
    assert!(ok);
}

#[test]
fn criterion_8_appendix() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let basis = build_equivariant_basis();
    let gens = sp4_generators(basis.omega()).unwrap();
    if gens.len() != 10 {
        bad.push(format!("{} generators of sp(4)", gens.len()));
    }
    if let Some((m, g, b, r)) = basis.equivariance_defect(&gens).unwrap() {
        bad.push(format!("{m} not equivariant for generator {g} at {b:?}: {r}"));
    }
    if basis.rank() != 5 {
        bad.push(format!("maps have rank {}", basis.rank()));
    }
    let dim = commutant_dimension(basis.omega()).unwrap();
    if dim != 5 {
        bad.push(format!("commutant dimension {dim}"));
    }
    let sol = solve_left_inverse_constraints(&basis).unwrap();
    if sol != ConstraintSolution::closed_form() {
        bad.push(format!("solution ({}, {}, {})", sol.lambda1, sol.mu1, sol.nu));
    }
    let r = basis.combination(&sol.at(&Rational::zero(), &Rational::zero()));
    if !is_left_inverse(&r, basis.omega()).unwrap() {
        bad.push("r̃∘φ₃ ≠ id at (0, 0)".into());
    }
    let cert = check_no_chain_left_inverse_deg2(&basis, &sol).unwrap();
    if !cert.infeasible() || !cert.residual_nonzero_at_origin || cert.inconsistent_subsystem.is_empty() {
        bad.push(format!("chain condition not certified infeasible: {cert:?}"));
    }
    for n in [2usize, 4, 6] {
        let c = check_top_degree_no_go(n);
        if !c.spans() || c.dim != n * binomial(n, 2) {
            bad.push(format!("top degree n={n}: {c:?}"));
        }
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 60;
    line(
        8,
        ok,
        format!(
            "(λ₁,μ₁,ν) = ({}, {}, {}), commutant {dim}, {} equations infeasible, {:?}; {bad:?}",
            sol.lambda1, sol.mu1, sol.nu, cert.equations, t.elapsed()
        ),
    );
    assert!(ok);
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn criterion_9_determinism() {
    let mut bad = Vec::new();
    let mut configs = Vec::new();
    let mut sp = JobConfig::new(Command::Family);
    sp.family = Some("sp".into());
    sp.n = Some(4);
    sp.verify = Verification::Random { seed: 11, count: 5 };
    sp.format = Format::Json;
    configs.push(sp);
    let mut tor = JobConfig::new(Command::Tor);
    tor.foliation = Some(data("f1.json"));
    tor.format = Format::Json;
    configs.push(tor);
    let mut app = JobConfig::new(Command::Appendix);
    app.format = Format::Json;
    configs.push(app);
    for c in &configs {
        let a = run(c).unwrap().render();
        let b = run(c).unwrap().render();
        if a != b {
            bad.push(format!("{:?} differs between runs", c.command));
        }
        if !a.contains("\"seed\"") {
            bad.push(format!("{:?} report lacks the seed", c.command));
        }
    }
    let bin = env!("CARGO_BIN_EXE_folia");
    let args = ["family", "--type", "sl", "--n", "3", "--verify", "random:10:5", "--format", "json"];
    let out1 = Process::new(bin).args(args).output().unwrap();
    let out2 = Process::new(bin).args(args).env("FOLIA_THREADS", "1").output().unwrap();
    if out1.stdout != out2.stdout || !out1.status.success() {
        bad.push("binary output differs between runs".into());
    }
    let ok = bad.is_empty();
    line(9, ok, format!("{} library jobs and one binary job byte-identical; {bad:?}", configs.len()));
    assert!(ok);
}
