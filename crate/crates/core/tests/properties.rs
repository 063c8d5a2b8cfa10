//! Property tests for ring arithmetic, the matrix calculus, certificates
//! and normalization.

use proptest::prelude::*;

use defring::acceptance::random_sl;
use defring::defo::{diamond_check, strictly_equivalent, Certificate};
use defring::localring::{find_homs, quotient_by_m_power};
use defring::matrix::decompose_transvections;
use defring::normalize::{induced_lift, normalize_lift, random_congruence_matrix, seeded_rng};
use defring::{Ideal, Mat, RingHom, RingSpec};

const RINGS: [&str; 8] = [
    "Z/8",
    "Z/27",
    "Z/2[x]/(x^3)",
    "Z/3[x]/(x^2)",
    "Z/2[x]/(x^2 + x + 1)",
    "Z/4[x]/(x^2 - 2)",
    "Z/25[x]/(x^2 - 5)",
    "Z/9[x]/(x^2 + 1)",
];

fn ring_strategy() -> impl Strategy<Value = RingSpec> {
    prop::sample::select(RINGS.to_vec()).prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(r in ring_strategy(), i in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let size = r.size().unwrap();
        let (a, b, c) = (r.element_at(i % size), r.element_at(j % size), r.element_at(k % size));
        prop_assert_eq!(r.index_of(&a), i % size);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(a.is_unit(), !a.in_max_ideal());
        if a.is_unit() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn quotient_maps_are_homomorphisms(r in ring_strategy(), i in any::<u64>(), j in any::<u64>()) {
        let size = r.size().unwrap();
        let (a, b) = (r.element_at(i % size), r.element_at(j % size));
        for l in 1..r.nilpotency_index() {
            let (_, pi) = quotient_by_m_power(&r, l).unwrap();
            prop_assert_eq!(pi.apply(&(&a + &b)), &pi.apply(&a) + &pi.apply(&b));
            prop_assert_eq!(pi.apply(&(&a * &b)), &pi.apply(&a) * &pi.apply(&b));
        }
    }

    #[test]
    fn determinant_is_multiplicative(r in ring_strategy(), n in 2usize..5, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let size = r.size().unwrap();
        let mut random = || {
            let rows: Vec<Vec<_>> = (0..n)
                .map(|_| (0..n).map(|_| r.element_at(rand::Rng::gen_range(&mut rng, 0..size))).collect())
                .collect();
            Mat::from_rows(&r, &rows).unwrap()
        };
        let (x, y) = (random(), random());
        prop_assert_eq!(x.mul(&y).det(), &x.det() * &y.det());
        if x.det().is_unit() {
            prop_assert!(x.mul(&x.inverse().unwrap()).is_identity());
        }
    }

    #[test]
    fn decomposition_round_trips(r in ring_strategy(), n in 2usize..5, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let unit = Ideal::unit(&r);
        let m = random_sl(&r, n, &unit, &mut rng).unwrap();
        prop_assert_eq!(decompose_transvections(&m, &unit).unwrap().evaluate(&r), m);
        let maximal = Ideal::maximal(&r);
        let m = random_sl(&r, n, &maximal.product(&maximal), &mut rng).unwrap();
        let word = decompose_transvections(&m, &maximal).unwrap();
        prop_assert_eq!(word.evaluate(&r), m);
        prop_assert!(word.factors.iter().all(|t| maximal.contains(&t.r)));
        prop_assert!(word.inverse().evaluate(&r).mul(&word.evaluate(&r)).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn normalization_recovers_the_hom(case in 0usize..4, seed in any::<u64>()) {
        let (n, source, target) = [(4, "Z/4", "Z/4"), (4, "Z/4", "Z/2[x]/(x^3)"), (3, "Z/9", "Z/9"), (2, "Z/49", "Z/49")][case];
        let (r, s): (RingSpec, RingSpec) = (source.parse().unwrap(), target.parse().unwrap());
        let homs = find_homs(&r, &s).unwrap().homs;
        let f = &homs[seed as usize % homs.len()];
        let k = random_congruence_matrix(&s, n, &mut seeded_rng(seed));
        let lift = induced_lift(f, n).unwrap().conjugate(&k).unwrap();
        let out = normalize_lift(&lift).unwrap();
        prop_assert_eq!(&out.hom, f);
        for m in &out.chain {
            prop_assert!(m.congruent_to_identity(&Ideal::maximal(&s)));
        }
        let normalized = lift.conjugate(&out.conjugator(&s, n)).unwrap();
        prop_assert!(diamond_check(&normalized).is_ok());
    }

    #[test]
    fn certificates_round_trip(seed in any::<u64>()) {
        let s: RingSpec = "Z/9".parse().unwrap();
        let k = random_congruence_matrix(&s, 3, &mut seeded_rng(seed));
        let lift = induced_lift(&RingHom::identity(&s), 3).unwrap().conjugate(&k).unwrap();
        let cert = Certificate::from_generator_lift(&lift);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.to_generator_lift().unwrap(), lift);
    }

    #[test]
    fn conjugation_preserves_the_class(seed in any::<u64>()) {
        let s: RingSpec = "Z/3[x]/(x^2)".parse().unwrap();
        let homs = find_homs(&s, &s).unwrap().homs;
        let f = &homs[seed as usize % homs.len()];
        let lift = induced_lift(f, 2).unwrap();
        let k = random_congruence_matrix(&s, 2, &mut seeded_rng(seed));
        prop_assert!(strictly_equivalent(&lift, &lift.conjugate(&k).unwrap()).unwrap());
    }
}
