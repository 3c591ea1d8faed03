//! The dg Lie algebra on Λ^•V*⊗V resolving the linear vector fields, and its
//! subfamily vanishing on a subspace W.

use folia::families::{build_gl, build_glw};
use folia::multilinear::Rational;
use folia::report::Verification;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        let spec = build_gl(n, 4)?;
        let checks = spec.verify(Verification::Exhaustive);
        let passed = checks.iter().filter(|c| c.passed()).count();
        println!("{}: ranks {:?}, {passed}/{} checks pass", spec.kind.tag(), spec.ranks(), checks.len());
    }
    let w = vec![vec![Rational::one(), Rational::from(2), Rational::zero()]];
    let spec = build_glw(3, w, 4)?;
    for c in spec.verify(Verification::Random { seed: 7, count: 50 }) {
        println!("  {c}");
    }
    Ok(())
}
