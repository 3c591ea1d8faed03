//! Seeded random inputs for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multilinear::{ExteriorTensor, Monomial, Polynomial, Rational, Space};

/// Deterministic generator; identical seeds give identical streams on every platform.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero integer coefficient in `[-3, 3]`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let v: i64 = rng.gen_range(1..=3);
    Rational::from(if rng.gen_bool(0.5) { v } else { -v })
}

/// Random homogeneous polynomial of degree `deg` with up to `terms` terms.
pub fn random_polynomial<R: Rng>(rng: &mut R, dim: usize, deg: u32, terms: usize) -> Polynomial {
    let mons = Monomial::all_of_degree(dim, deg);
    let mut p = Polynomial::zero(dim);
    for _ in 0..terms {
        let m = *mons.choose(rng).expect("monomials exist");
        p.add_term(m, &small_rational(rng));
    }
    p
}

/// Random element of `space` with homogeneous coefficients of degree `deg`.
pub fn random_tensor<R: Rng>(rng: &mut R, space: Space, deg: u32, terms: usize) -> ExteriorTensor {
    let basis = space.basis();
    let mut t = space.zero();
    if basis.is_empty() {
        return t;
    }
    for _ in 0..terms {
        let b = *basis.choose(rng).expect("nonempty basis");
        t.add_term(b, &random_polynomial(rng, space.dim, deg, 2));
    }
    t
}

/// Random element of the span of `gens` with polynomial coefficients of degree `deg`.
pub fn random_combination<R: Rng>(rng: &mut R, gens: &[ExteriorTensor], deg: u32, terms: usize) -> ExteriorTensor {
    let mut t = gens[0].space().zero();
    for _ in 0..terms {
        let g = gens.choose(rng).expect("generators");
        let f = random_polynomial(rng, g.dim(), deg, 2);
        t.add_mul_poly(&f, g);
    }
    t
}
