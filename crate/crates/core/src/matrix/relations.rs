//! Exact verification of the standard identities among transvections,
//! diagonal matrices and the `sigma` matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::localring::{RingElt, RingSpec};

use super::standard::{diag, diag_pair, sigma, transvection};
use super::Mat;

/// Rings with at most this many elements are swept exhaustively.
pub const EXHAUSTIVE_RELATION_LIMIT: u64 = 81;

/// How parameters are chosen.
#[derive(Clone, Copy, Debug)]
pub enum Sampling {
    /// Exhaustive for small rings, otherwise `samples` random draws.
    Auto { samples: usize, seed: u64 },
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling::Auto {
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: u8,
    pub statement: &'static str,
    pub checked: u64,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub ring: String,
    pub n: usize,
    pub exhaustive: bool,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }
}

const STATEMENTS: [&str; 7] = [
    "t_ab^r t_ab^s = t_ab^(r+s)",
    "[t_ab^r, t_bc^s] = t_ac^(rs)",
    "[t_ab^r, t_cd^s] = 1 when {a,c} and {b,d} are disjoint",
    "D t_ab^r D^-1 = t_ab^(r l_a / l_b)",
    "sigma_ab^u = t_ab^u t_ba^(-1/u) t_ab^u",
    "d_ab^u = sigma_ab^u sigma_ab^-1",
    "d_ab^u = t_ab^r t_ba^s t_ab^(-r/u) t_ba^(-su) for u = 1 + rs",
];

struct Checker {
    checks: Vec<RelationCheck>,
}

impl Checker {
    fn record(&mut self, rel: u8, ok: bool, witness: impl FnOnce() -> String) {
        let c = &mut self.checks[rel as usize - 1];
        c.checked += 1;
        if !ok && c.failure.is_none() {
            c.failure = Some(witness());
        }
    }
}

fn t(n: usize, a: usize, b: usize, r: &RingElt) -> Mat {
    transvection(n, a, b, r).expect("valid indices")
}

fn comm(x: &Mat, y: &Mat) -> Mat {
    Mat::commutator(x, y).expect("invertible")
}

/// Index data for one check: a relation with its indices and parameters.
enum Case {
    Add(usize, usize, RingElt, RingElt),
    Chain(usize, usize, usize, RingElt, RingElt),
    Disjoint([usize; 4], RingElt, RingElt),
    Conj(usize, usize, Vec<RingElt>, RingElt),
    Sigma(usize, usize, RingElt),
    DiagSigma(usize, usize, RingElt),
    DiagFour(usize, usize, RingElt, RingElt),
}

fn run_case(n: usize, ck: &mut Checker, case: Case) {
    let ring = match &case {
        Case::Add(_, _, r, _)
        | Case::Chain(_, _, _, r, _)
        | Case::Disjoint(_, r, _)
        | Case::Conj(_, _, _, r)
        | Case::Sigma(_, _, r)
        | Case::DiagSigma(_, _, r)
        | Case::DiagFour(_, _, r, _) => r.ring().clone(),
    };
    let one = ring.one();
    let ix = |a: usize, b: usize| format!("({},{})", a + 1, b + 1);
    match case {
        Case::Add(a, b, r, s) => {
            let ok = t(n, a, b, &r).mul(&t(n, a, b, &s)) == t(n, a, b, &(&r + &s));
            ck.record(1, ok, || format!("ab={}, r={r}, s={s}", ix(a, b)));
        }
        Case::Chain(a, b, c, r, s) => {
            let ok = comm(&t(n, a, b, &r), &t(n, b, c, &s)) == t(n, a, c, &(&r * &s));
            ck.record(2, ok, || format!("a,b,c={},{},{}, r={r}, s={s}", a + 1, b + 1, c + 1));
        }
        Case::Disjoint([a, b, c, d], r, s) => {
            let ok = comm(&t(n, a, b, &r), &t(n, c, d, &s)).is_identity();
            ck.record(3, ok, || format!("ab={}, cd={}, r={r}, s={s}", ix(a, b), ix(c, d)));
        }
        Case::Conj(a, b, lambdas, r) => {
            let dm = diag(&lambdas).expect("units");
            let lhs = dm.mul(&t(n, a, b, &r)).mul(&dm.inverse().expect("invertible"));
            let factor = &lambdas[a] * &lambdas[b].inverse().expect("unit");
            let ok = lhs == t(n, a, b, &(&factor * &r));
            ck.record(4, ok, || format!("ab={}, D={lambdas:?}, r={r}", ix(a, b)));
        }
        Case::Sigma(a, b, u) => {
            let ui = u.inverse().expect("unit");
            let rhs = t(n, a, b, &u).mul(&t(n, b, a, &-&ui)).mul(&t(n, a, b, &u));
            let ok = sigma(n, a, b, &u).expect("unit") == rhs;
            ck.record(5, ok, || format!("ab={}, u={u}", ix(a, b)));
        }
        Case::DiagSigma(a, b, u) => {
            let rhs = sigma(n, a, b, &u)
                .expect("unit")
                .mul(&sigma(n, a, b, &-&one).expect("unit"));
            let ok = diag_pair(n, a, b, &u).expect("unit") == rhs;
            ck.record(6, ok, || format!("ab={}, u={u}", ix(a, b)));
        }
        Case::DiagFour(a, b, r, s) => {
            let u = &one + &(&r * &s);
            let ui = u.inverse().expect("unit");
            let rhs = t(n, a, b, &r)
                .mul(&t(n, b, a, &s))
                .mul(&t(n, a, b, &-&(&r * &ui)))
                .mul(&t(n, b, a, &-&(&s * &u)));
            let ok = diag_pair(n, a, b, &u).expect("unit") == rhs;
            ck.record(7, ok, || format!("ab={}, r={r}, s={s}, u={u}", ix(a, b)));
        }
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

fn disjoint_quads(n: usize) -> Vec<[usize; 4]> {
    let ps = pairs(n);
    let mut out = Vec::new();
    for &(a, b) in &ps {
        for &(c, d) in &ps {
            if a != d && c != b {
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

fn chains(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, b) in pairs(n) {
        for c in 0..n {
            if c != a && c != b {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Checks all seven identities over `ring` in dimension `n`.
pub fn verify_relations(ring: &RingSpec, n: usize, sampling: Sampling) -> RelationReport {
    assert!(n >= 2, "dimension must be at least 2");
    let mut ck = Checker {
        checks: STATEMENTS
            .iter()
            .enumerate()
            .map(|(i, s)| RelationCheck {
                relation: i as u8 + 1,
                statement: s,
                checked: 0,
                failure: None,
            })
            .collect(),
    };
    let size = ring.size();
    let exhaustive = match sampling {
        Sampling::Exhaustive => true,
        Sampling::Auto { .. } => size.is_some_and(|s| s <= EXHAUSTIVE_RELATION_LIMIT),
        Sampling::Random { .. } => false,
    };
    if exhaustive {
        sweep_exhaustive(ring, n, &mut ck);
    } else {
        let (samples, seed) = match sampling {
            Sampling::Auto { samples, seed } | Sampling::Random { samples, seed } => (samples, seed),
            Sampling::Exhaustive => unreachable!(),
        };
        sweep_random(ring, n, samples, seed, &mut ck);
    }
    RelationReport {
        ring: ring.to_string(),
        n,
        exhaustive,
        checks: ck.checks,
    }
}

fn sweep_exhaustive(ring: &RingSpec, n: usize, ck: &mut Checker) {
    let elts: Vec<RingElt> = ring.elements().collect();
    let units: Vec<RingElt> = elts.iter().filter(|x| x.is_unit()).cloned().collect();
    for (a, b) in pairs(n) {
        for r in &elts {
            for s in &elts {
                run_case(n, ck, Case::Add(a, b, r.clone(), s.clone()));
                if (&ring.one() + &(r * s)).is_unit() {
                    run_case(n, ck, Case::DiagFour(a, b, r.clone(), s.clone()));
                }
            }
        }
        for u in &units {
            run_case(n, ck, Case::Sigma(a, b, u.clone()));
            run_case(n, ck, Case::DiagSigma(a, b, u.clone()));
        }
        // Sweep (l_a, l_b, r); the remaining diagonal entries cycle through
        // the units so every unit occurs in every position.
        let mut counter = 0usize;
        for la in &units {
            for lb in &units {
                for r in &elts {
                    let lambdas: Vec<RingElt> = (0..n)
                        .map(|k| match k {
                            k if k == a => la.clone(),
                            k if k == b => lb.clone(),
                            k => units[(counter + k) % units.len()].clone(),
                        })
                        .collect();
                    counter += 1;
                    run_case(n, ck, Case::Conj(a, b, lambdas, r.clone()));
                }
            }
        }
    }
    for (a, b, c) in chains(n) {
        for r in &elts {
            for s in &elts {
                run_case(n, ck, Case::Chain(a, b, c, r.clone(), s.clone()));
            }
        }
    }
    for q in disjoint_quads(n) {
        for r in &elts {
            for s in &elts {
                run_case(n, ck, Case::Disjoint(q, r.clone(), s.clone()));
            }
        }
    }
}

fn sweep_random(ring: &RingSpec, n: usize, samples: usize, seed: u64, ck: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = ring.size().expect("ring too large to sample");
    let mut elt = |rng: &mut ChaCha8Rng| ring.element_at(rng.gen_range(0..size));
    let unit = |rng: &mut ChaCha8Rng, elt: &mut dyn FnMut(&mut ChaCha8Rng) -> RingElt| loop {
        let x = elt(rng);
        if x.is_unit() {
            break x;
        }
    };
    let ps = pairs(n);
    let quads = disjoint_quads(n);
    let chs = chains(n);
    for _ in 0..samples {
        let (a, b) = ps[rng.gen_range(0..ps.len())];
        let (r, s) = (elt(&mut rng), elt(&mut rng));
        run_case(n, ck, Case::Add(a, b, r.clone(), s.clone()));
        if (&ring.one() + &(&r * &s)).is_unit() {
            run_case(n, ck, Case::DiagFour(a, b, r.clone(), s.clone()));
        }
        let u = unit(&mut rng, &mut elt);
        run_case(n, ck, Case::Sigma(a, b, u.clone()));
        run_case(n, ck, Case::DiagSigma(a, b, u));
        let lambdas: Vec<RingElt> = (0..n).map(|_| unit(&mut rng, &mut elt)).collect();
        run_case(n, ck, Case::Conj(a, b, lambdas, r.clone()));
        if !chs.is_empty() {
            let (a, b, c) = chs[rng.gen_range(0..chs.len())];
            run_case(n, ck, Case::Chain(a, b, c, r.clone(), s.clone()));
        }
        let q = quads[rng.gen_range(0..quads.len())];
        run_case(n, ck, Case::Disjoint(q, r, s));
    }
}
