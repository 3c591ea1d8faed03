//! Symplectic linear vector fields: binary and ternary brackets and the
//! homotopy Jacobi identity.

use folia::families::build_sp;
use folia::koszul::SymplecticForm;
use folia::report::Verification;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [2, 4, 6] {
        let spec = build_sp(SymplecticForm::darboux(n)?, 3)?;
        println!("sp({n}): ranks {:?}", spec.ranks());
        let v = if n <= 4 { Verification::Exhaustive } else { Verification::Random { seed: 3, count: 20 } };
        for c in spec.verify(v) {
            println!("  {c}");
        }
    }
    Ok(())
}
