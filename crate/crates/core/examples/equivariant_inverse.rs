//! Equivariant left inverses of φ^ω₃ on ℝ⁴ and the obstruction to a chain-map inverse.

use folia::appendix::{
    build_equivariant_basis, check_no_chain_left_inverse_deg2, check_top_degree_no_go, commutant_dimension,
    solve_left_inverse_constraints,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = build_equivariant_basis();
    println!("rank of {{p1, p2, q1, q2, s}}: {}", basis.rank());
    println!("commutant dimension: {}", commutant_dimension(basis.omega())?);
    let sol = solve_left_inverse_constraints(&basis)?;
    println!("λ₁ = {}, μ₁ = {}, ν = {}", sol.lambda1, sol.mu1, sol.nu);
    let cert = check_no_chain_left_inverse_deg2(&basis, &sol)?;
    println!(
        "chain condition: {} equations, rank {} vs {} (infeasible: {})",
        cert.equations, cert.rank_homogeneous, cert.rank_augmented, cert.infeasible()
    );
    for eq in &cert.inconsistent_subsystem {
        println!("  {eq}");
    }
    for n in [2, 4, 6] {
        let c = check_top_degree_no_go(n);
        println!("top degree, n = {n}: rank {} of {}", c.rank, c.dim);
    }
    Ok(())
}
