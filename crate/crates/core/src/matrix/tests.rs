use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::localring::{Ideal, RingElt, RingSpec};

fn ring(s: &str) -> RingSpec {
    s.parse().unwrap()
}

/// Leibniz expansion over all permutations.
fn det_oracle(m: &Mat) -> RingElt {
    let n = m.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = m.ring().zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let term = (0..n).fold(m.ring().one(), |acc, i| &acc * &m.get(i, p[i]));
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// All 2x2 matrices over a small ring.
fn all_2x2(r: &RingSpec) -> Vec<Mat> {
    let elts: Vec<RingElt> = r.elements().collect();
    let mut out = Vec::new();
    for a in &elts {
        for b in &elts {
            for c in &elts {
                for d in &elts {
                    out.push(
                        Mat::from_rows(r, &[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
                            .unwrap(),
                    );
                }
            }
        }
    }
    out
}

fn random_sl(r: &RingSpec, n: usize, ideal: &Ideal, rng: &mut ChaCha8Rng) -> Mat {
    let gens = ideal.module_generators();
    let size = r.size().unwrap();
    let mut m = Mat::identity(r, n);
    for _ in 0..12 {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let x = if ideal.is_unit() {
            r.element_at(rng.gen_range(0..size))
        } else {
            gens.iter().fold(r.zero(), |acc, g| {
                &acc + &(g * &r.element_at(rng.gen_range(0..size)))
            })
        };
        m = m.mul(&transvection(n, a, b, &x).unwrap());
    }
    m
}

#[test]
fn standard_matrix_examples() {
    let f2 = RingSpec::zmod(2, 1).unwrap();
    assert_eq!(
        transvection(2, 0, 1, &f2.one()).unwrap(),
        Mat::from_ints(&f2, &[&[1, 1], &[0, 1]])
    );
    assert_eq!(
        sigma(2, 0, 1, &f2.one()).unwrap(),
        Mat::from_ints(&f2, &[&[0, 1], &[1, 0]])
    );
    let z8 = RingSpec::zmod(2, 3).unwrap();
    assert_eq!(
        diag_pair(3, 0, 1, &z8.from_int(3)).unwrap(),
        Mat::from_ints(&z8, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 1]])
    );
    assert!(matches!(
        diag_pair(2, 0, 1, &z8.from_int(2)),
        Err(Error::NonUnitParameter(_))
    ));
    assert!(matches!(transvection(2, 1, 1, &z8.one()), Err(Error::BadIndices(_))));
    for m in [
        diag_pair(3, 2, 0, &z8.from_int(5)).unwrap(),
        sigma(3, 1, 2, &z8.from_int(7)).unwrap(),
        transvection(3, 2, 1, &z8.from_int(6)).unwrap(),
    ] {
        assert!(m.det().is_one());
    }
}

#[test]
fn standard_matrices_commute_with_reduction() {
    let r = ring("Z/5^2[x]/(x^2 - 5)");
    let k = r.residue_field();
    for u in r.elements().filter(|u| u.is_unit()).step_by(37) {
        let ur = u.residue();
        assert_eq!(sigma(3, 0, 2, &u).unwrap().residue(), sigma(3, 0, 2, &ur).unwrap());
        assert_eq!(diag_pair(3, 1, 0, &u).unwrap().residue(), diag_pair(3, 1, 0, &ur).unwrap());
        assert_eq!(transvection(3, 1, 2, &u).unwrap().residue(), transvection(3, 1, 2, &ur).unwrap());
        assert_eq!(ur.ring(), &k);
    }
}

#[test]
fn determinant_matches_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in ["Z/2^3", "Z/5^2[x]/(x^2 - 5)", "Z/2^3[x]/(x^2); J = 4, 2x"] {
        let r = ring(s);
        let size = r.size().unwrap();
        for n in 1..=4 {
            for _ in 0..20 {
                let rows: Vec<Vec<RingElt>> = (0..n)
                    .map(|_| (0..n).map(|_| r.element_at(rng.gen_range(0..size))).collect())
                    .collect();
                let m = Mat::from_rows(&r, &rows).unwrap();
                assert_eq!(m.det(), det_oracle(&m), "{m}");
            }
        }
    }
}

#[test]
fn determinant_is_multiplicative_and_inverse_works() {
    let r = ring("Z/3^2");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let rows = |rng: &mut ChaCha8Rng| -> Vec<Vec<RingElt>> {
            (0..3).map(|_| (0..3).map(|_| r.element_at(rng.gen_range(0..9))).collect()).collect()
        };
        let a = Mat::from_rows(&r, &rows(&mut rng)).unwrap();
        let b = Mat::from_rows(&r, &rows(&mut rng)).unwrap();
        assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        match a.inverse() {
            Ok(ai) => assert!(a.mul(&ai).is_identity() && ai.mul(&a).is_identity()),
            Err(_) => assert!(!a.det().is_unit()),
        }
    }
}

#[test]
fn relations_hold_exhaustively_on_small_rings() {
    for (s, n) in [
        ("Z/2", 2),
        ("Z/2", 3),
        ("Z/2", 4),
        ("Z/3", 3),
        ("Z/2^3", 2),
        ("Z/2^3", 3),
        ("Z/3^2", 3),
        ("F_3[x]/(x^2)", 2),
        ("Z/5^2", 2),
    ] {
        let report = verify_relations(&ring(s), n, Sampling::default());
        assert!(report.exhaustive);
        assert!(report.all_passed(), "{s} n={n}: {report:?}");
        for c in &report.checks {
            let applicable = c.relation != 2 || n >= 3;
            assert_eq!(c.checked > 0, applicable, "{s} n={n} relation {}", c.relation);
        }
    }
}

#[test]
fn relations_hold_on_random_samples() {
    let report = verify_relations(&ring("Z/5^2[x]/(x^2 - 5)"), 3, Sampling::default());
    assert!(!report.exhaustive);
    assert!(report.all_passed(), "{report:?}");
}

#[test]
fn relation_examples() {
    let z8 = RingSpec::zmod(2, 3).unwrap();
    let t = |a, b, r: i128| transvection(2, a, b, &z8.from_int(r)).unwrap();
    assert_eq!(t(0, 1, 2).mul(&t(0, 1, 3)), t(0, 1, 5));
    // u = 1 + 2*2 = 5, 5^{-1} = 5.
    let rhs = t(0, 1, 2).mul(&t(1, 0, 2)).mul(&t(0, 1, -2 * 5)).mul(&t(1, 0, -2 * 5));
    assert_eq!(diag_pair(2, 0, 1, &z8.from_int(5)).unwrap(), rhs);
    let f2 = RingSpec::zmod(2, 1).unwrap();
    let t2 = |a, b| transvection(2, a, b, &f2.one()).unwrap();
    assert_eq!(sigma(2, 0, 1, &f2.one()).unwrap(), t2(0, 1).mul(&t2(1, 0)).mul(&t2(0, 1)));
}

#[test]
fn decomposition_examples() {
    let z8 = RingSpec::zmod(2, 3).unwrap();
    let two = Ideal::generated_by(&z8, vec![z8.from_int(2)]);
    let w = decompose_transvections(&Mat::identity(&z8, 3), &two).unwrap();
    assert!(w.is_empty());
    let m = Mat::from_ints(&z8, &[&[1, 4], &[4, 1]]);
    let w = decompose_transvections(&m, &two).unwrap();
    assert_eq!(w.evaluate(&z8), m);
    assert!(w.factors.iter().all(|t| two.contains(&t.r)));

    let f2 = RingSpec::zmod(2, 1).unwrap();
    let swap = Mat::from_ints(&f2, &[&[0, 1], &[1, 0]]);
    let w = decompose_transvections(&swap, &Ideal::unit(&f2)).unwrap();
    assert_eq!(w.to_string(), "t_12^(1) t_21^(1) t_12^(1)");

    let not_sl = Mat::from_ints(&z8, &[&[3, 0], &[0, 1]]);
    assert_eq!(
        decompose_transvections(&not_sl, &Ideal::unit(&z8)),
        Err(Error::NotUnimodular)
    );
    let not_congruent = Mat::from_ints(&z8, &[&[1, 2], &[0, 1]]);
    assert!(matches!(
        decompose_transvections(&not_congruent, &two),
        Err(Error::NotInCongruenceSubgroup(_))
    ));
}

#[test]
fn decomposition_of_all_small_sl2() {
    for s in ["Z/2", "Z/3"] {
        let r = ring(s);
        let full = Ideal::unit(&r);
        let mut count = 0;
        for m in all_2x2(&r).into_iter().filter(|m| m.det().is_one()) {
            let w = decompose_transvections(&m, &full).unwrap();
            assert_eq!(w.evaluate(&r), m);
            count += 1;
        }
        assert_eq!(count, if s == "Z/2" { 6 } else { 24 });
    }
}

#[test]
fn decomposition_round_trips_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in ["Z/2^3", "F_5[x]/(x^2)", "Z/5^2[x]/(x^2 - 5)", "Z/2[x]/(x^3)", "Z/3^3"] {
        let r = ring(s);
        let m_ideal = Ideal::maximal(&r);
        let square = m_ideal.product(&m_ideal);
        for n in 2..=4 {
            for _ in 0..40 {
                let m = random_sl(&r, n, &Ideal::unit(&r), &mut rng);
                let w = decompose_transvections(&m, &Ideal::unit(&r)).unwrap();
                assert_eq!(w.evaluate(&r), m);

                let m = random_sl(&r, n, &square, &mut rng);
                let w = decompose_transvections(&m, &m_ideal).unwrap();
                assert_eq!(w.evaluate(&r), m, "{s}");
                assert!(w.factors.iter().all(|t| m_ideal.contains(&t.r)));
            }
        }
    }
}

#[test]
fn scalar_detection_matches_brute_force() {
    let r = ring("Z/3");
    let all = all_2x2(&r);
    let sl: Vec<&Mat> = all.iter().filter(|m| m.det().is_one()).collect();
    for m in &all {
        let central = sl.iter().all(|g| g.mul(m) == m.mul(g));
        assert_eq!(scalar_if_centralizes(m).is_ok(), central, "{m}");
    }
    let z9 = RingSpec::zmod(3, 2).unwrap();
    assert_eq!(scalar_if_centralizes(&Mat::scalar(&z9.from_int(3), 3)), Ok(z9.from_int(3)));
    let m = transvection(3, 0, 1, &r.one()).unwrap();
    assert_eq!(scalar_if_centralizes(&m), Err((1, 0)));
}

#[test]
fn commutator_examples() {
    let z9 = RingSpec::zmod(3, 2).unwrap();
    let strategy = CommutatorStrategy::Through {
        via: 1,
        left: z9.from_int(2),
        right: z9.from_int(3),
    };
    let (p, q) = express_as_commutator(3, 0, 2, &z9.from_int(6), &strategy).unwrap();
    assert_eq!(p, transvection(3, 0, 1, &z9.from_int(2)).unwrap());
    assert_eq!(q, transvection(3, 1, 2, &z9.from_int(3)).unwrap());
    assert_eq!(Mat::commutator(&p, &q).unwrap(), transvection(3, 0, 2, &z9.from_int(6)).unwrap());

    let f7 = RingSpec::zmod(7, 1).unwrap();
    let strategy = CommutatorStrategy::Diagonal { alpha: f7.from_int(3) };
    let (p, q) = express_as_commutator(2, 0, 1, &f7.one(), &strategy).unwrap();
    assert_eq!(p, Mat::from_ints(&f7, &[&[3, 0], &[0, 5]]));
    assert_eq!(q, transvection(2, 0, 1, &f7.one()).unwrap());

    let f3 = RingSpec::zmod(3, 1).unwrap();
    assert!(matches!(
        express_as_commutator(2, 0, 1, &f3.one(), &CommutatorStrategy::Auto),
        Err(Error::UnsupportedCase(_))
    ));
    for (s, n) in [("Z/5^2", 2), ("Z/2", 3), ("Z/2^2", 4), ("F_7[x]/(x^2)", 2)] {
        let r = ring(s);
        for x in r.elements() {
            for (a, b) in [(0, 1), (1, 0)] {
                let (p, q) = express_as_commutator(n, a, b, &x, &CommutatorStrategy::Auto).unwrap();
                assert_eq!(Mat::commutator(&p, &q).unwrap(), transvection(n, a, b, &x).unwrap());
            }
        }
    }
}

#[test]
fn chebyshev_examples() {
    assert_eq!(chebyshev_poly(0).to_string(), "0");
    assert_eq!(chebyshev_poly(2).to_string(), "x");
    assert_eq!(chebyshev_poly(3).to_string(), "x^2 - 1");
    assert_eq!(chebyshev_poly(3).sub(&chebyshev_poly(2)).to_string(), "x^2 - x - 1");

    let f5 = RingSpec::zmod(5, 1).unwrap();
    let m = Mat::from_ints(&f5, &[&[0, 1], &[-1, 1]]);
    assert_eq!(minus_identity_power_test(&m, 3), Ok((true, true)));
    let f7 = RingSpec::zmod(7, 1).unwrap();
    let m = Mat::from_ints(&f7, &[&[0, 1], &[-1, 0]]);
    assert_eq!(minus_identity_power_test(&m, 3), Ok((false, false)));
    let bad = Mat::from_ints(&f7, &[&[1, 0], &[0, 1]]);
    assert!(matches!(
        minus_identity_power_test(&bad, 3),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn chebyshev_criterion_exhaustive() {
    for s in ["Z/5", "Z/7", "Z/3^2", "F_3[x]/(x^2)"] {
        let r = ring(s);
        for m in all_2x2(&r).into_iter().filter(|m| m.det().is_one()) {
            for n in [1, 3, 5, 7, 9] {
                match minus_identity_power_test(&m, n) {
                    Ok((a, b)) => assert_eq!(a, b, "{s}: {m}, n = {n}"),
                    Err(Error::PreconditionViolated(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn cayley_hamilton_powers(seed in any::<u64>()) {
        let r = ring("Z/5^2[x]/(x^2 - 5)");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_sl(&r, 2, &Ideal::unit(&r), &mut rng);
        let t = m.trace();
        let id = Mat::identity(&r, 2);
        let mut power = id.clone();
        for j in 1..=25usize {
            power = power.mul(&m);
            let fj = eval_int_poly(&chebyshev_poly(j), &t);
            let fj1 = eval_int_poly(&chebyshev_poly(j - 1), &t);
            prop_assert_eq!(&power, &m.scale(&fj).sub(&id.scale(&fj1)));
        }
    }
}
