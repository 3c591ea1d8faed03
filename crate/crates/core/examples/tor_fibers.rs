//! Fibers of the minimal resolution at the origin for the foliation ⟨x∂x, y∂x⟩,
//! with explicit representatives and the isotropy action.

use folia::multilinear::{Polynomial, VectorField};
use folia::tor::{isotropy_lie_algebra, isotropy_representation, tor_report, Foliation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let f = Foliation::new(2, vec![VectorField::directional(2, 0, x), VectorField::directional(2, 0, y)])?;
    let report = tor_report(&f, 6)?;
    for e in &report.entries {
        println!("E_{}: dim {} by degree {:?}", e.i, e.total, e.dims_by_degree);
        for r in &e.representatives {
            println!("  degree {}: {}", r.degree, r.tensor);
        }
    }
    let alg = isotropy_lie_algebra(&f)?;
    println!("isotropy algebra: dim {}, abelian {}", alg.dim(), alg.is_abelian());
    for i in 0..=1 {
        let rho = isotropy_representation(&f, &alg, i, 6)?;
        println!("action on E_{i}: dim {}, trivial {}", rho.dim, rho.is_trivial());
    }
    Ok(())
}
