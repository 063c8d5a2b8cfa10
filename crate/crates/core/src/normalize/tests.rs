use super::*;
use crate::error::Error;
use crate::localring::{find_homs, quotient_by_m_power, RingHom, RingSpec};
use crate::matrix::{transvection, unit_matrix, Mat};
use crate::poly::IntPoly;

fn ring(s: &str) -> RingSpec {
    s.parse().unwrap()
}

fn conjugated(f: &RingHom, n: usize, seed: u64) -> GeneratorLift {
    let k = random_congruence_matrix(f.target(), n, &mut seeded_rng(seed));
    induced_lift(f, n).unwrap().conjugate(&k).unwrap()
}

#[test]
fn index_pairs_are_ordered() {
    assert_eq!(index_pairs(3), vec![(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
}

#[test]
fn induced_lift_applies_the_hom() {
    let f = RingHom::identity(&ring("Z/4"));
    let lift = induced_lift(&f, 4).unwrap();
    for ((a, b), r, m) in lift.entries() {
        assert_eq!(m, &transvection(4, a, b, &r).unwrap());
    }
    let (k, pi) = quotient_by_m_power(&ring("Z/9"), 1).unwrap();
    let lift = induced_lift(&pi, 3).unwrap();
    let five = ring("Z/9").from_int(5);
    assert_eq!(lift.image(0, 2, &five), &transvection(3, 0, 2, &k.from_int(2)).unwrap());
    let r = RingSpec::new(5, 2, &IntPoly::new(vec![-5, 0, 1]), &[]).unwrap();
    let s = ring("Z/5[x]/(x^2)");
    let f = RingHom::new(&r, &s, s.x().scale(2)).unwrap();
    let lift = induced_lift(&f, 4).unwrap();
    assert_eq!(lift.image(3, 1, &r.x()), &transvection(4, 3, 1, &s.x().scale(2)).unwrap());
    GeneratorLift::new(&r, &s, 4, |a, b, x| transvection(4, a, b, &f.apply(x)), None).unwrap();
}

#[test]
fn construction_rejects_broken_relations() {
    let r = ring("Z/5");
    let err = GeneratorLift::new(&r, &r, 3, |a, b, x| transvection(3, a, b, &(x * x)), None).unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)), "{err}");
}

#[test]
fn defects_of_induced_lift_lie_on_the_support() {
    let s = ring("Z/9");
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let lift = induced_lift(&RingHom::identity(&s), 3).unwrap();
    let table = defect_table(&lift, &pi, 1).unwrap();
    assert_eq!(table.lift_of(&s.one()), &s.one());
    for ((a, b), r, _) in lift.entries() {
        let p = table.lift_of(&r);
        assert_eq!(&pi.apply(p), &pi.apply(&r));
        let shift = unit_matrix(&s, 3, a, b).scale(&(&r - p));
        assert_eq!(table.defect(a, b, &r), &shift);
    }
    let x = solve_conjugator(&table, Strategy::N3).unwrap();
    assert!(x.raw_data().iter().all(|&v| v == 0));
}

#[test]
fn defects_vanish_when_lifts_are_exact() {
    let s = ring("Z/4");
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    // Least preimages of 0 and 1 in Z/4 are 0 and 1, so only r = 2, 3 differ.
    let table = defect_table(&induced_lift(&RingHom::identity(&s), 4).unwrap(), &pi, 1).unwrap();
    assert!(!table.is_zero());
    let zero = s.zero();
    assert!(table.defect(0, 1, &zero).raw_data().iter().all(|&v| v == 0));
    assert!(table.defect(0, 1, &s.one()).raw_data().iter().all(|&v| v == 0));
}

#[test]
fn defects_of_conjugated_lift_follow_the_commutator() {
    let s = ring("Z/9");
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let mut x = Mat::zeros(&s, 3);
    x.set(0, 1, &s.from_int(3));
    x.set(2, 0, &s.from_int(6));
    x.set(1, 1, &s.from_int(3));
    let k = Mat::identity(&s, 3).add(&x);
    let lift = induced_lift(&RingHom::identity(&s), 3).unwrap().conjugate(&k).unwrap();
    let table = defect_table(&lift, &pi, 1).unwrap();
    for ((a, b), r, _) in lift.entries() {
        let p = table.lift_of(&r);
        let e = unit_matrix(&s, 3, a, b);
        // (I + X) t^r (I - X) = t^p + p (X e - e X) + (r - p) e.
        let expected = x.mul(&e).sub(&e.mul(&x)).scale(p).add(&e.scale(&(&r - p)));
        assert_eq!(table.defect(a, b, &r), &expected);
        assert!(table.defect(a, b, &r).trace().is_zero());
    }
    let solved = solve_conjugator(&table, Strategy::N3).unwrap();
    let back = lift.conjugate(&Mat::identity(&s, 3).add(&solved)).unwrap();
    assert!(crate::defo::diamond_check(&back).is_ok());
}

#[test]
fn defect_table_rejects_wrong_base() {
    let s = ring("Z/9");
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let two = s.from_int(2);
    let lift = GeneratorLift::new_unvalidated(&s, &s, 3, |a, b, r| transvection(3, a, b, &(r * &two)), None)
        .unwrap();
    let err = defect_table(&lift, &pi, 1).unwrap_err();
    assert!(matches!(err, Error::NotCongruentToInduced(_)), "{err}");
}

#[test]
fn planted_defect_violates_the_commutation_claim() {
    let s = ring("Z/4");
    let two = s.from_int(2);
    let lift = GeneratorLift::new_unvalidated(
        &s,
        &s,
        4,
        |a, b, r| {
            let mut m = transvection(4, a, b, r)?;
            if (a, b) == (0, 1) && r.is_one() {
                m.set(2, 3, &two);
            }
            Ok(m)
        },
        None,
    )
    .unwrap();
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let table = defect_table(&lift, &pi, 1).unwrap();
    match solve_conjugator(&table, Strategy::N4).unwrap_err() {
        Error::ClaimViolated { claim, witness } => {
            assert_eq!(claim, 1);
            assert!(witness.contains("M_12^(1)"), "{witness}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn planted_scalar_violates_the_determinant_claim() {
    // Images 4 t over Z/9 with n = 4: defects 3 I + 3 p e_ab pass the
    // commutation claims, but det = 4^4 = 4 and tr = 12 = 3.
    let s = ring("Z/9");
    let four = s.from_int(4);
    let lift = GeneratorLift::new_unvalidated(&s, &s, 4, |a, b, r| Ok(transvection(4, a, b, r)?.scale(&four)), None)
        .unwrap();
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let table = defect_table(&lift, &pi, 1).unwrap();
    match solve_conjugator(&table, Strategy::N4).unwrap_err() {
        Error::ClaimViolated { claim, .. } => assert_eq!(claim, 3),
        other => panic!("{other}"),
    }
}

#[test]
fn planted_diagonal_violates_the_outer_diagonal_claim() {
    // Images 3 t over Z/4 with n = 4: trace 8 = 0 and det 1, but the
    // diagonal entries outside {a, b} are 2.
    let s = ring("Z/4");
    let three = s.from_int(3);
    let lift = GeneratorLift::new_unvalidated(&s, &s, 4, |a, b, r| Ok(transvection(4, a, b, r)?.scale(&three)), None)
        .unwrap();
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let table = defect_table(&lift, &pi, 1).unwrap();
    match solve_conjugator(&table, Strategy::N4).unwrap_err() {
        Error::ClaimViolated { claim, .. } => assert_eq!(claim, 4),
        other => panic!("{other}"),
    }
}

#[test]
fn strategy_preconditions() {
    assert_eq!(Strategy::for_case(4, 2).unwrap(), Strategy::N4);
    assert_eq!(Strategy::for_case(3, 3).unwrap(), Strategy::N3);
    assert!(matches!(Strategy::for_case(3, 2), Err(Error::UnsupportedCase(_))));
    let s = ring("Z/4");
    let (_, pi) = quotient_by_m_power(&s, 1).unwrap();
    let table = defect_table(&induced_lift(&RingHom::identity(&s), 3).unwrap(), &pi, 1).unwrap();
    assert!(solve_conjugator(&table, Strategy::N4).is_err());
    assert!(solve_conjugator(&table, Strategy::N3).is_err());
}

#[test]
fn round_trip_n4_over_z4() {
    let f = RingHom::identity(&ring("Z/4"));
    for seed in 0..5 {
        let lift = conjugated(&f, 4, seed);
        let out = normalize_lift(&lift).unwrap();
        assert_eq!(out.hom, f);
        let total = out.conjugator(f.target(), 4);
        assert_eq!(lift.conjugate(&total).unwrap(), induced_lift(&f, 4).unwrap());
    }
}

#[test]
fn round_trip_into_truncated_polynomials() {
    let r = ring("Z/4");
    for target in ["Z/2[x]/(x^2)", "Z/2[x]/(x^3)"] {
        let s = ring(target);
        let homs = find_homs(&r, &s).unwrap();
        assert!(!homs.homs.is_empty());
        for (i, f) in homs.homs.iter().enumerate() {
            let out = normalize_lift(&conjugated(f, 4, i as u64)).unwrap();
            assert_eq!(&out.hom, f);
        }
    }
}

#[test]
fn round_trip_n3_over_z9() {
    let f = RingHom::identity(&ring("Z/9"));
    for seed in 0..3 {
        assert_eq!(normalize_lift(&conjugated(&f, 3, seed)).unwrap().hom, f);
    }
}

#[test]
fn round_trip_n2_over_z49() {
    let f = RingHom::identity(&ring("Z/49"));
    for seed in 0..3 {
        let lift = conjugated(&f, 2, seed);
        let out = normalize_lift(&lift).unwrap();
        assert_eq!(out.hom, f);
    }
}

#[test]
fn n2_needs_torus_images() {
    let s = ring("Z/49");
    let lift = GeneratorLift::new_unvalidated(&s, &s, 2, |a, b, r| transvection(2, a, b, r), None).unwrap();
    assert!(matches!(normalize_lift(&lift), Err(Error::PreconditionViolated(_))));
}

#[test]
fn excluded_cases_are_unsupported() {
    for (n, spec) in [(3, "Z/4"), (2, "Z/4"), (2, "Z/9"), (2, "Z/25")] {
        let f = RingHom::identity(&ring(spec));
        let lift = induced_lift(&f, n).unwrap();
        assert!(
            matches!(normalize_lift(&lift), Err(Error::UnsupportedCase(_))),
            "n = {n} over {spec}"
        );
    }
}

#[test]
fn exceptional_family_is_a_witness() {
    let report = sl3f2_witness().unwrap();
    assert!(report.t12_squared_is_identity);
    assert_eq!(report.induced.len(), 1);
    assert!(!report.induced[0].t12_squared_is_identity);
    assert!(!report.induced[0].strictly_equivalent);
    assert!(report.diamond_witness.is_some());
    assert!(report.passed);
}
