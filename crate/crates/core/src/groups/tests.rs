use proptest::prelude::*;

use super::*;
use crate::localring::RingSpec;
use crate::matrix::{transvection, Mat};

fn transvection_group(p: u64, n: usize) -> FiniteGroup {
    let ring = RingSpec::zmod(p, 1).unwrap();
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                gens.push(transvection(n, a, b, &ring.one()).unwrap());
            }
        }
    }
    FiniteGroup::generate(&gens, DEFAULT_CAP).unwrap()
}

#[test]
fn closure_orders_match_formulas() {
    for (p, n) in [(2, 2), (3, 2), (5, 2), (2, 3)] {
        let g = transvection_group(p, n);
        assert_eq!(g.order() as u128, sl_order(n as u32, p), "SL_{n}(F_{p})");
    }
    assert_eq!(transvection_group(2, 2).order(), 6);
    assert_eq!(transvection_group(2, 3).order(), 168);
    assert_eq!(transvection_group(5, 2).order(), 120);
    let gl = NamedGroup::Gl2F3.group();
    assert_eq!(gl.order(), 48);
    assert_eq!(gl.order() as u128, gl_order(2, 3));
}

#[test]
fn named_groups_have_expected_orders() {
    let expected = [6, 24, 120, 168, 48];
    for (g, e) in NamedGroup::ALL.iter().zip(expected) {
        assert_eq!(g.group().order(), e, "{g}");
        assert_eq!(g.to_string().parse::<NamedGroup>().unwrap(), *g);
    }
}

#[test]
fn group_structure_is_consistent() {
    let g = transvection_group(3, 2);
    assert!(g.element(0).is_identity());
    assert!(g.has_table());
    for x in 0..g.order() {
        assert_eq!(g.mul(x, g.inverse(x)), 0);
        for y in (0..g.order()).step_by(5) {
            let direct = g.element(x).mul(g.element(y));
            assert_eq!(g.position(&direct), Some(g.mul(x, y)));
        }
    }
    let mut sorted = g.elements()[1..].to_vec();
    sorted.sort();
    assert_eq!(sorted, g.elements()[1..]);
}

#[test]
fn cap_is_enforced() {
    let ring = RingSpec::zmod(5, 1).unwrap();
    let gens = vec![
        transvection(2, 0, 1, &ring.one()).unwrap(),
        transvection(2, 1, 0, &ring.one()).unwrap(),
    ];
    assert!(matches!(
        FiniteGroup::generate(&gens, 50),
        Err(crate::Error::CapExceeded(50))
    ));
    let singular = Mat::from_ints(&ring, &[&[1, 0], &[0, 0]]);
    assert!(matches!(
        FiniteGroup::generate(&[singular], 10),
        Err(crate::Error::NotInvertible)
    ));
}

#[test]
fn table_is_withheld_above_limit() {
    let ring = RingSpec::zmod(7, 1).unwrap();
    let gens = vec![
        transvection(2, 0, 1, &ring.one()).unwrap(),
        transvection(2, 1, 0, &ring.one()).unwrap(),
    ];
    let g = FiniteGroup::generate(&gens, DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), 336);
    assert!(g.has_table());

    let ring = RingSpec::zmod(3, 1).unwrap();
    let mut gens = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 0), (1, 0)] {
        gens.push(transvection(3, a, b, &ring.one()).unwrap());
    }
    let big = FiniteGroup::generate(&gens, DEFAULT_CAP).unwrap();
    assert_eq!(big.order() as u128, sl_order(3, 3));
    assert!(!big.has_table());
    assert!(matches!(big.table(), Err(crate::Error::TableMissing)));
    let x = 17;
    let y = 4000;
    let direct = big.element(x).mul(big.element(y));
    assert_eq!(big.position(&direct), Some(big.mul(x, y)));
}

#[test]
fn builtin_presentations_hold_and_generate() {
    let cases = [
        (BuiltinPresentation::Sunday, 168),
        (BuiltinPresentation::Coxeter(3), 24),
        (BuiltinPresentation::Coxeter(5), 120),
        (BuiltinPresentation::S3, 6),
    ];
    for (which, order) in cases {
        let (pres, images) = which.build().unwrap();
        let check = pres.check(&images).unwrap();
        assert!(check.holds, "{which}: {:?}", check.first_failure);
        let g = FiniteGroup::generate(&images, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), order, "{which}");
    }
    assert!(matches!(
        BuiltinPresentation::Coxeter(7).build(),
        Err(crate::Error::UnsupportedPresentation(_))
    ));
}

#[test]
fn sunday_generators() {
    let (pres, images) = BuiltinPresentation::Sunday.build().unwrap();
    let f2 = RingSpec::zmod(2, 1).unwrap();
    assert_eq!(
        images[0],
        Mat::from_ints(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]])
    );
    assert_eq!(pres.relators.len(), 4);
    let s7 = eval_word(&Word::generator(0, 7), &images).unwrap();
    assert!(s7.is_identity());
    assert!(eval_word(&Word::empty(), &images).unwrap().is_identity());
}

#[test]
fn coxeter_relators_are_central_not_trivial() {
    let (pres, images) = BuiltinPresentation::Coxeter(3).build().unwrap();
    let a3 = eval_word(&Word::generator(0, 3), &images).unwrap();
    assert_eq!(a3, Mat::identity(images[0].ring(), 2).neg());
    assert_eq!(a3, eval_word(&Word::generator(1, 2), &images).unwrap());
    assert_eq!(pres.relators.len(), 2);

    let (pres, mut images) = BuiltinPresentation::Coxeter(5).build().unwrap();
    images[1] = Mat::identity(images[1].ring(), 2);
    let check = pres.check(&images).unwrap();
    assert!(!check.holds);
    assert_eq!(check.first_failure, Some(0));
}

#[test]
fn presentation_text_round_trips() {
    let p = Presentation::parse("gens: a, b; rel: a^7 = 1; rel: (a b)^3 = b^2").unwrap();
    assert_eq!(p.generators, vec!["a", "b"]);
    assert_eq!(p.relators[0], (Word::generator(0, 7), Word::empty()));
    assert_eq!(
        p.relators[1].0,
        Word(vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)])
    );
    let again = Presentation::parse(&p.to_string()).unwrap();
    assert_eq!(again, p);

    let chained = Presentation::parse("gens: x;rel:x^2=x^-2=1").unwrap();
    assert_eq!(chained.relators.len(), 2);
    assert_eq!(chained.relators[0].1, Word::generator(0, -2));
    assert!(Presentation::parse("gens: a; rel: b = 1").is_err());
    assert!(Presentation::parse("gens: a; rel: (a = 1").is_err());
    assert!(Presentation::parse("rel: 1 = 1").is_err());
}

#[test]
fn negative_powers_of_singular_images_fail() {
    let f2 = RingSpec::zmod(2, 1).unwrap();
    let singular = Mat::zeros(&f2, 2);
    assert!(matches!(
        eval_word(&Word::generator(0, -1), &[singular]),
        Err(crate::Error::NonInvertibleImage(_))
    ));
}

#[test]
fn teichmueller_torus_orders() {
    for spec in ["Z/3^3", "Z/5^2", "Z/7^2", "Z/2^4", "Z/3[x]/(x^2 + 1)", "Z/5[x]/(x^2)"] {
        let ring: RingSpec = spec.parse().unwrap();
        let d = teichmueller_torus(&ring).unwrap();
        let q = ring.residue_field_size() as usize;
        assert_eq!(d.order(), q - 1, "{spec}");
        assert_ne!(d.order() as u64 % ring.p(), 0);
        for m in d.elements() {
            assert!(m.det().is_one());
        }
    }
}

#[test]
fn commutators_generate_in_perfect_cases() {
    // SL_3(F_2) and SL_2(F_5) are perfect, SL_2(F_2) and SL_2(F_3) are not.
    for (p, n, perfect) in [(2, 3, true), (5, 2, true), (2, 2, false), (3, 2, false)] {
        let g = transvection_group(p, n);
        let c = g.commutator_subgroup().unwrap();
        assert_eq!(c.order() == g.order(), perfect, "SL_{n}(F_{p})");
    }
    let z4 = RingSpec::zmod(2, 2).unwrap();
    let gens: Vec<Mat> = [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)]
        .iter()
        .map(|&(a, b)| transvection(3, a, b, &z4.one()).unwrap())
        .collect();
    let g = FiniteGroup::generate(&gens, DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), 168 * 256);
}

proptest! {
    #[test]
    fn word_evaluation_is_a_homomorphism(
        w1 in proptest::collection::vec((0usize..2, -4i64..5), 0..6),
        w2 in proptest::collection::vec((0usize..2, -4i64..5), 0..6),
    ) {
        let (_, images) = BuiltinPresentation::Coxeter(5).build().unwrap();
        let u = Word(w1).reduced();
        let v = Word(w2).reduced();
        let lhs = eval_word(&u.concat(&v), &images).unwrap();
        let rhs = eval_word(&u, &images).unwrap().mul(&eval_word(&v, &images).unwrap());
        prop_assert_eq!(lhs, rhs);
        let inv = eval_word(&u.inverse(), &images).unwrap();
        prop_assert!(inv.mul(&eval_word(&u, &images).unwrap()).is_identity());
    }
}
