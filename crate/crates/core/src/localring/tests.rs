use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::poly::IntPoly;

fn ring(s: &str) -> RingSpec {
    s.parse().unwrap()
}

/// Schoolbook product of integer polynomials reduced modulo a monic `g`
/// and `q`, used as an oracle for rings without extra relations.
fn oracle_mul(x: &[u64], y: &[u64], g: &[i128], q: i128) -> Vec<u64> {
    let d = g.len() - 1;
    let mut t = vec![0i128; 2 * d];
    for i in 0..d {
        for j in 0..d {
            t[i + j] = (t[i + j] + x[i] as i128 * y[j] as i128) % q;
        }
    }
    for i in (d..2 * d).rev() {
        let c = t[i];
        for j in 0..=d {
            t[i - d + j] = (t[i - d + j] - c * g[j]).rem_euclid(q);
        }
    }
    t[..d].iter().map(|&v| v.rem_euclid(q) as u64).collect()
}

#[test]
fn sizes_and_nilpotency() {
    let cases = [
        ("Z/2^2", 4, 2),
        ("Z/3", 3, 1),
        ("Z/5^2[x]/(x^2 - 5)", 625, 4),
        ("Z/3^2[x]/(x^2 - 3)", 81, 4),
        ("Z/2[x]/(x^3)", 8, 3),
        ("Z/2[x]/(x^2 + x + 1)", 4, 1),
        ("Z/7^2", 49, 2),
    ];
    for (s, size, nil) in cases {
        let r = ring(s);
        assert_eq!(r.size(), Some(size), "{s}");
        assert_eq!(r.nilpotency_index(), nil, "{s}");
        assert_eq!(r.elements().count() as u64, size);
    }
}

#[test]
fn rejects_nonlocal_and_nonmonic() {
    let g = IntPoly::parse("x^2 + x + 2").unwrap();
    assert!(matches!(RingSpec::new(2, 3, &g, &[]), Err(Error::NotLocal(_))));
    let g = IntPoly::parse("x^2 - 1").unwrap();
    assert!(matches!(RingSpec::new(5, 1, &g, &[]), Err(Error::NotLocal(_))));
    let g = IntPoly::parse("2x^2 + 1").unwrap();
    assert!(matches!(RingSpec::new(5, 1, &g, &[]), Err(Error::NotMonic(_))));
    assert!(matches!(RingSpec::zmod(6, 1), Err(Error::NotPrime(6))));
    let g = IntPoly::x();
    assert!(matches!(
        RingSpec::new(5, 2, &g, &[IntPoly::constant(1)]),
        Err(Error::InvalidRing(_))
    ));
}

#[test]
fn canonicalization_lowers_exponent_and_degree() {
    // 4 = 0 forces exponent 2; the ring is spanned by 1, 2, x.
    let r = ring("Z/2^3[x]/(x^2); J = 4, 2x");
    assert_eq!(r.exponent(), 2);
    assert_eq!(r.degree(), 2);
    assert_eq!(r.size(), Some(8));
    // x - 3 in the ideal collapses to Z/7.
    let r = ring("Z/7[x]/(x^2 - 6x + 9); J = x - 3");
    assert_eq!(r, RingSpec::zmod(7, 1).unwrap());
    let r = ring("Z/7[x]/(x - 3)");
    assert_eq!(r, RingSpec::zmod(7, 1).unwrap());
    // Presentations of the same ring agree.
    assert_eq!(ring("Z/25"), ring("Z/5^2"));
    assert_eq!(ring("F_5[x]/(x^2)"), RingSpec::dual_numbers(5).unwrap());
}

#[test]
fn display_roundtrip() {
    for s in [
        "Z/5^2[x]/(x^2 - 5)",
        "Z/2[x]/(x^3)",
        "Z/3^2",
        "Z/2^3[x]/(x^2); J = 4, 2x",
        "Z/2[x]/(x^2 + x + 1)",
    ] {
        let r = ring(s);
        let back: RingSpec = r.to_string().parse().unwrap();
        assert_eq!(r, back, "{s} -> {r}");
    }
}

#[test]
fn residue_fields() {
    let r = ring("Z/5^2[x]/(x^2 - 5)");
    assert_eq!(r.residue_field(), RingSpec::zmod(5, 1).unwrap());
    let f4 = ring("Z/2[x]/(x^2 + x + 1)");
    assert!(f4.is_field());
    let r = ring("Z/2^2[x]/(x^2 + x + 1)");
    assert_eq!(r.residue_field(), f4);
    assert_eq!(r.x().residue(), f4.x());
    let r = ring("Z/7^2[x]/(x^2 - 3)");
    assert_eq!(r.residue_field_size(), 49);
}

#[test]
fn max_ideal_powers() {
    let r = ring("Z/5^2[x]/(x^2 - 5)");
    let m2 = Ideal::max_power(&r, 2);
    assert_eq!(m2, Ideal::generated_by(&r, vec![r.from_int(5)]));
    assert_eq!(m2.size_log_p(), 2);
    assert!(Ideal::max_power(&r, 4).is_zero());
    assert!(!Ideal::max_power(&r, 3).is_zero());
    assert_eq!(r.x().m_adic_valuation(), 1);
    assert_eq!(r.from_int(5).m_adic_valuation(), 2);
}

#[test]
fn factor_in_square() {
    let r = ring("Z/5^2[x]/(x^2 - 5)");
    let m = Ideal::maximal(&r);
    for x in Ideal::max_power(&r, 2).elements() {
        let parts = m.factor_in_product(&m, &x).unwrap();
        let sum = parts.iter().fold(r.zero(), |acc, (a, b)| &acc + &(a * b));
        assert_eq!(sum, x);
        assert!(parts.iter().all(|(a, b)| m.contains(a) && m.contains(b)));
    }
    assert!(m.factor_in_product(&m, &r.x()).is_none());
}

#[test]
fn quotients() {
    let r = ring("Z/5^2[x]/(x^2 - 5)");
    let (q2, pi) = quotient_by_m_power(&r, 2).unwrap();
    assert_eq!(q2, RingSpec::dual_numbers(5).unwrap());
    assert_eq!(pi.apply(&r.x()), q2.x());
    let (q1, _) = quotient_by_m_power(&r, 1).unwrap();
    assert_eq!(q1, RingSpec::zmod(5, 1).unwrap());
    let z8 = RingSpec::zmod(2, 3).unwrap();
    let (q, pi) = quotient_by_m_power(&z8, 2).unwrap();
    assert_eq!(q, RingSpec::zmod(2, 2).unwrap());
    assert_eq!(pi.apply(&z8.from_int(7)), q.from_int(3));
    // A quotient whose presentation collapses to degree one keeps track of x.
    let r = ring("Z/3^2[x]/(x^2 - 3x)");
    let (q, pi) = quotient_by_m_power(&r, 1).unwrap();
    assert_eq!(q, RingSpec::zmod(3, 1).unwrap());
    assert_eq!(pi.apply(&r.x()), q.zero());
}

#[test]
fn teichmueller_and_hensel() {
    let z25 = RingSpec::zmod(5, 2).unwrap();
    let f5 = RingSpec::zmod(5, 1).unwrap();
    let t = teichmueller(&z25, &f5.from_int(2)).unwrap();
    assert_eq!(t, z25.from_int(7));
    // sqrt(-1) in Z/5^3 lifting 2.
    let z125 = RingSpec::zmod(5, 3).unwrap();
    let f = [z125.from_int(1), z125.zero(), z125.one()];
    let i = hensel_lift(&f, &z125.from_int(2)).unwrap();
    assert_eq!(&i * &i, z125.from_int(-1));
    let sq = [z125.zero(), z125.zero(), z125.one()];
    assert_eq!(hensel_lift(&sq, &z125.zero()), Err(Error::NonUnitDerivative));
}

#[test]
fn hom_counts() {
    let cases = [
        ("Z/5^2[x]/(x^2 - 5)", "F_5[x]/(x^2)", 5),
        ("F_3[x]/(x^2)", "F_3[x]/(x^2)", 3),
        ("F_2[x]/(x^2)", "F_2[x]/(x^2)", 2),
        ("Z/3^2[x]/(x^2 - 3)", "F_3[x]/(x^2)", 3),
        ("Z/5^2", "Z/5^2[x]/(x^2 - 5)", 1),
        ("Z/5", "Z/5^2", 0),
    ];
    for (a, b, n) in cases {
        let search = find_homs(&ring(a), &ring(b)).unwrap();
        assert!(search.complete);
        assert_eq!(search.homs.len(), n, "{a} -> {b}");
    }
    assert!(matches!(
        find_homs(&ring("Z/5"), &ring("Z/3")),
        Err(Error::ResidueMismatch(_))
    ));
}

#[test]
fn hom_injectivity() {
    let src = ring("Z/5^2[x]/(x^2 - 5)");
    let homs = find_homs(&src, &RingSpec::dual_numbers(5).unwrap()).unwrap().homs;
    assert!(homs.iter().all(|h| !h.is_injective()));
    let d3 = RingSpec::dual_numbers(3).unwrap();
    let homs = find_homs(&d3, &d3).unwrap().homs;
    assert_eq!(homs.iter().filter(|h| h.is_injective()).count(), 2);
}

#[test]
fn element_indexing() {
    let r = ring("Z/2^3[x]/(x^2); J = 4, 2x");
    for (i, e) in r.elements().enumerate() {
        assert_eq!(r.index_of(&e), i as u64);
    }
    let mut all: Vec<RingElt> = r.elements().collect();
    let sorted = {
        let mut v = all.clone();
        v.sort();
        v
    };
    assert_eq!(all, sorted);
    all.dedup();
    assert_eq!(all.len(), 8);
}

fn ring_strategy() -> impl Strategy<Value = (RingSpec, Vec<i128>)> {
    prop_oneof![
        Just(("Z/5^2[x]/(x^2 - 5)", vec![-5, 0, 1])),
        Just(("Z/2^3[x]/(x^2 + x + 1)", vec![1, 1, 1])),
        Just(("Z/3^2[x]/(x^3 - 3x + 3)", vec![3, -3, 0, 1])),
        Just(("Z/7^3", vec![0, 1])),
    ]
    .prop_map(|(s, g)| (ring(s), g))
}

proptest! {
    #[test]
    fn multiplication_matches_oracle((r, g) in ring_strategy(), xs in prop::collection::vec(any::<u64>(), 3), ys in prop::collection::vec(any::<u64>(), 3)) {
        let q = r.zm().modulus();
        let d = r.degree();
        let x: Vec<u64> = xs[..d].iter().map(|v| v % q).collect();
        let y: Vec<u64> = ys[..d].iter().map(|v| v % q).collect();
        let ex = r.elt_from_canonical(&x).unwrap();
        let ey = r.elt_from_canonical(&y).unwrap();
        let prod = &ex * &ey;
        prop_assert_eq!(prod.coeffs().to_vec(), oracle_mul(&x, &y, &g, q as i128));
    }

    #[test]
    fn units_invert((r, _) in ring_strategy(), idx in any::<u64>()) {
        let x = r.element_at(idx % r.size().unwrap());
        match x.inverse() {
            Ok(y) => prop_assert!((&x * &y).is_one()),
            Err(_) => prop_assert!(Ideal::maximal(&r).contains(&x)),
        }
    }

    #[test]
    fn ring_axioms_with_relations(i in 0u64..8, j in 0u64..8, k in 0u64..8) {
        let r = ring("Z/2^3[x]/(x^2); J = 4, 2x");
        let (a, b, c) = (r.element_at(i), r.element_at(j), r.element_at(k));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a);
    }
}
