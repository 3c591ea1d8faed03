//! Exactness certificates for the polynomial Koszul complexes.

use folia::koszul::{koszul_complex, Terminal};
use folia::multilinear::Target;

fn main() {
    let cutoff = 5;
    for n in 1..=4 {
        for (target, terminal) in
            [(Target::Scalar, Terminal::Ideal), (Target::Scalar, Terminal::Evaluation), (Target::Vector, Terminal::Ideal)]
        {
            let complex = koszul_complex(n, target, terminal);
            match complex.exactness_certificate(cutoff) {
                Ok(c) => println!("{:<40} exact, {} graded pieces up to degree {cutoff}", c.complex, c.cells_checked),
                Err(e) => println!("n = {n}: {e}"),
            }
        }
    }
}
