use proptest::prelude::*;

use folia::appendix::build_equivariant_basis;
use folia::brackets::{jacobiator, linf_degree, nr_bracket, sp_action};
use folia::cli::{foliation_to_json, parse_foliation};
use folia::families::SpStructure;
use folia::koszul::{euler_contraction_d, negative_euler_partial, SymplecticForm};
use folia::multilinear::{ExteriorTensor, Polynomial, Rational, Space, Target, VectorField};
use folia::sampling::{random_polynomial, random_tensor, rng, small_rational};
use folia::tor::{tor_report, Foliation, TorComplex};

fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (-50i64..50, 1i64..20).prop_map(|(a, b)| Rational::new(a, b)),
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(a, b)| Rational::new(a, b)),
    ]
}

fn sign(k: usize) -> Rational {
    Rational::from(if k % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::one());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_and_leibniz(seed in any::<u64>(), d1 in 0u32..4, d2 in 0u32..4) {
        let mut r = rng(seed);
        let f = random_polynomial(&mut r, 3, d1, 3);
        let g = random_polynomial(&mut r, 3, d2, 3);
        let h = random_polynomial(&mut r, 3, 1, 2);
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        for i in 0..3 {
            prop_assert_eq!(f.mul(&g).derivative(i), f.derivative(i).mul(&g).add(&f.mul(&g.derivative(i))));
        }
        let point: Vec<Rational> = (0..3).map(|_| small_rational(&mut r)).collect();
        prop_assert_eq!(f.mul(&g).eval(&point), &f.eval(&point) * &g.eval(&point));
    }

    #[test]
    fn polynomial_records_round_trip(seed in any::<u64>(), d in 0u32..4) {
        let f = random_polynomial(&mut rng(seed), 4, d, 4);
        prop_assert_eq!(Polynomial::from_records(4, &f.to_records()).unwrap(), f);
    }

    #[test]
    fn wedge_is_graded_commutative_and_contraction_an_antiderivation(
        seed in any::<u64>(), p in 0usize..3, q in 0usize..3, i in 0usize..4,
    ) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r, Space::new(4, p, Target::Scalar), 1, 3);
        let b = random_tensor(&mut r, Space::new(4, q, Target::Scalar), 0, 3);
        let ab = a.wedge(&b).unwrap();
        prop_assert_eq!(&ab, &b.wedge(&a).unwrap().scale(&sign(p * q)));
        prop_assume!(p + q > 0);
        // ι of a 0-form is zero, so only the other term survives
        let mut rhs = ab.contract(i).space().zero();
        if p > 0 {
            rhs = rhs.add(&a.contract(i).wedge(&b).unwrap());
        }
        if q > 0 {
            rhs = rhs.add(&a.wedge(&b.contract(i)).unwrap().scale(&sign(p)));
        }
        prop_assert_eq!(ab.contract(i), rhs);
    }

    #[test]
    fn koszul_differentials_square_to_zero(seed in any::<u64>(), p in 2usize..=4, deg in 0u32..3) {
        let mut r = rng(seed);
        for target in [Target::Scalar, Target::Vector, Target::Form(2)] {
            let t = random_tensor(&mut r, Space::new(4, p, target), deg, 4);
            let d = euler_contraction_d(4, p - 1, target).unwrap().apply(&euler_contraction_d(4, p, target).unwrap().apply(&t));
            prop_assert!(d.is_zero());
            let dd = negative_euler_partial(4, p - 1, target).unwrap()
                .apply(&negative_euler_partial(4, p, target).unwrap().apply(&t));
            prop_assert!(dd.is_zero());
        }
    }

    #[test]
    fn nr_bracket_antisymmetry_and_jacobi(seed in any::<u64>(), k in prop::array::uniform3(1usize..=3)) {
        let mut r = rng(seed);
        let mut draw = |k: usize, deg: u32| random_tensor(&mut r, Space::new(3, k, Target::Vector), deg, 2);
        let (a, b, c) = (draw(k[0], 1), draw(k[1], 0), draw(k[2], 1));
        let ab = nr_bracket(&a, &b).unwrap();
        let ba = nr_bracket(&b, &a).unwrap();
        let s = sign(((linf_degree(&a) * linf_degree(&b)).rem_euclid(2) + 1) as usize);
        prop_assert_eq!(ab, ba.scale(&s));
        prop_assert!(jacobiator(&a, &b, &c, nr_bracket).unwrap().is_zero());
    }

    #[test]
    fn symplectic_left_inverse_and_projector(seed in any::<u64>(), p in 1usize..4, deg in 0u32..3) {
        let sp = SpStructure::new(SymplecticForm::darboux(4).unwrap()).unwrap();
        let mut r = rng(seed);
        let phi = sp.phi(p + 1);
        let t = random_tensor(&mut r, phi.source(), deg, 4);
        prop_assert_eq!(sp.r(p).apply(&phi.apply(&t)), t);
        let proj = sp.projector(p);
        let u = random_tensor(&mut r, proj.source(), deg, 4);
        let pu = proj.apply(&u);
        prop_assert_eq!(proj.apply(&pu), pu);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn equivariant_combinations_commute_with_the_action(seed in any::<u64>(), deg in 0u32..2) {
        let basis = build_equivariant_basis();
        let mut r = rng(seed);
        let coeffs: [Rational; 5] = std::array::from_fn(|_| small_rational(&mut r));
        let m = basis.combination(&coeffs);
        let x = random_tensor(&mut r, m.source(), deg, 3);
        // a constant element of sp(4): the ω-compatible part of a random endomorphism
        let a = {
            let gens = folia::appendix::sp4_generators(basis.omega()).unwrap();
            let mut acc = Space::new(4, 1, Target::Vector).zero();
            for g in &gens {
                acc.add_scaled(g, &small_rational(&mut r));
            }
            acc
        };
        let lhs = m.apply(&sp_action(&a, &x).unwrap());
        let rhs = nr_bracket(&a, &m.apply(&x)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_foliations_round_trip_and_satisfy_euler(seed in any::<u64>(), mask in any::<u16>(), count in 1usize..=3) {
        let mut r = rng(seed);
        let gens: Vec<VectorField> = (0..count)
            .map(|g| {
                let entry = |r: &mut _, k: usize| if mask >> (4 * g + k) & 1 == 1 { small_rational(r) } else { Rational::zero() };
                let m: Vec<Vec<Rational>> = (0..2).map(|i| (0..2).map(|j| entry(&mut r, 2 * i + j)).collect()).collect();
                VectorField::linear(&m)
            })
            .filter(|v| !v.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let f = Foliation::new(2, gens).unwrap();
        let back = parse_foliation("generated", &foliation_to_json(&f)).unwrap();
        prop_assert_eq!(back.generators(), f.generators());
        let report = tor_report(&f, 4).unwrap();
        prop_assert!(TorComplex::new(&f, 4).unwrap().euler_consistent(&report.entries));
    }
}

#[test]
fn tensor_zero_is_absorbing() {
    let z = ExteriorTensor::zero(3, 1, Target::Scalar);
    let a = random_tensor(&mut rng(1), Space::new(3, 1, Target::Scalar), 1, 2);
    assert!(z.wedge(&a).unwrap().is_zero());
}
