//! Divergence-free linear vector fields: the subcomplex cut out by the partial traces.

use folia::families::build_sl;
use folia::report::Verification;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let spec = build_sl(n, 5)?;
    println!("sl({n}) resolution ranks {:?}, fibers {:?}", spec.ranks(), spec.fiber_ranks());
    for c in spec.verify(Verification::Random { seed: 1, count: 100 }) {
        println!("  {c}");
    }
    Ok(())
}
