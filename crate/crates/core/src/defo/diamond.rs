//! Transvection-shaped lifts, recovery of the inducing homomorphism, and
//! the injectivity of the induced-lift map.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::localring::{RingElt, RingHom, RingSpec};
use crate::matrix::{sigma, transvection, Mat};
use crate::normalize::{index_pairs, GeneratorLift};

use super::lift::congruence_kernel;
use super::KERNEL_LIMIT;

/// The entries `c_ab^r` with `rho(t_ab^r) = t_ab^(c_ab^r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionTable {
    source: RingSpec,
    n: usize,
    values: Vec<RingElt>,
}

impl TransvectionTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> &RingSpec {
        &self.source
    }

    fn size(&self) -> usize {
        self.values.len() / (self.n * (self.n - 1))
    }

    fn at(&self, a: usize, b: usize, r_index: usize) -> &RingElt {
        let pair = index_pairs(self.n)
            .iter()
            .position(|&p| p == (a, b))
            .expect("valid pair");
        &self.values[pair * self.size() + r_index]
    }

    pub fn get(&self, a: usize, b: usize, r: &RingElt) -> &RingElt {
        self.at(a, b, self.source.index_of(r) as usize)
    }
}

/// Where a lift first fails to send a transvection to a transvection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondWitness {
    pub a: usize,
    pub b: usize,
    pub r: String,
    /// First offending entry, row-major, 0-based.
    pub entry: (usize, usize),
}

/// The table `c_ab^r` when every image is literally a transvection at the
/// same position; otherwise the first offending generator and entry.
pub fn diamond_check(lift: &GeneratorLift) -> std::result::Result<TransvectionTable, DiamondWitness> {
    let n = lift.n();
    let ring = lift.target();
    let one = ring.one();
    let mut values = Vec::new();
    for ((a, b), r, m) in lift.entries() {
        for i in 0..n {
            for j in 0..n {
                if (i, j) == (a, b) {
                    continue;
                }
                let x = m.get(i, j);
                let ok = if i == j { x == one } else { x.is_zero() };
                if !ok {
                    return Err(DiamondWitness {
                        a,
                        b,
                        r: r.to_string(),
                        entry: (i, j),
                    });
                }
            }
        }
        values.push(m.get(a, b));
    }
    Ok(TransvectionTable {
        source: lift.source().clone(),
        n,
        values,
    })
}

/// A recovered homomorphism with the diagonal conjugator used to normalize
/// `c_1j^1 = 1`.
#[derive(Clone, Debug)]
pub struct HomExtraction {
    pub hom: RingHom,
    pub conjugator: Mat,
}

fn not_hom(axiom: &str, witness: String) -> Error {
    Error::NotAHomomorphism {
        axiom: axiom.into(),
        witness,
    }
}

/// Recovers `f` with `c_ab^r = f(r)` after conjugating by
/// `d(1, c_12^1, ..., c_1n^1)`; every ring-homomorphism axiom is checked
/// exhaustively over the source ring.
pub fn extract_hom(table: &TransvectionTable, target: &RingSpec) -> Result<HomExtraction> {
    let n = table.n;
    let source = &table.source;
    let size = table.size();
    let one_index = source.index_of(&source.one()) as usize;
    let mut diag = vec![target.one()];
    for j in 1..n {
        let c = table.at(0, j, one_index).clone();
        if !c.is_unit() {
            return Err(not_hom("unit", format!("c_1{}^1 = {c} is not a unit", j + 1)));
        }
        diag.push(c);
    }
    let inverses: Vec<RingElt> = diag.iter().map(RingElt::inverse).collect::<Result<_>>()?;
    let conjugator = Mat::diagonal(&diag);
    // After conjugation, c_ab^r becomes d_a c_ab^r d_b^{-1}.
    let normalized = |a: usize, b: usize, i: usize| &(&diag[a] * table.at(a, b, i)) * &inverses[b];
    let elts: Vec<RingElt> = source.elements().collect();
    let phi: Vec<RingElt> = (0..size).map(|i| normalized(0, 1, i)).collect();

    if n == 2 {
        let g: Vec<RingElt> = (0..size).map(|i| normalized(1, 0, i)).collect();
        replay_sigma(source, target, &elts, &phi, &g)?;
    }
    for (a, b) in index_pairs(n) {
        for i in 0..size {
            let c = normalized(a, b, i);
            if c != phi[i] {
                return Err(not_hom(
                    "independence",
                    format!(
                        "c_{}{}^({}) = {c} but c_12^({}) = {}",
                        a + 1,
                        b + 1,
                        elts[i],
                        elts[i],
                        phi[i]
                    ),
                ));
            }
        }
    }
    if !phi[one_index].is_one() {
        return Err(not_hom("unit", format!("1 maps to {}", phi[one_index])));
    }
    let k = target.residue_field();
    for (i, r) in elts.iter().enumerate() {
        let want = crate::normalize::residue_in(&k, r);
        if phi[i].residue() != want {
            return Err(not_hom("residue", format!("{r} maps to {}", phi[i])));
        }
    }
    for (i, r) in elts.iter().enumerate() {
        for (j, s) in elts.iter().enumerate() {
            let sum = source.index_of(&(r + s)) as usize;
            if phi[sum] != &phi[i] + &phi[j] {
                return Err(not_hom("additivity", format!("r = {r}, s = {s}")));
            }
            let prod = source.index_of(&(r * s)) as usize;
            if phi[prod] != &phi[i] * &phi[j] {
                return Err(not_hom("multiplicativity", format!("r = {r}, s = {s}")));
            }
        }
    }
    let x_index = source.index_of(&source.x()) as usize;
    let hom = RingHom::new(source, target, phi[x_index].clone())?;
    for (i, r) in elts.iter().enumerate() {
        if hom.apply(r) != phi[i] {
            return Err(not_hom("polynomial", format!("{r} maps to {}", phi[i])));
        }
    }
    Ok(HomExtraction { hom, conjugator })
}

/// For `n = 2`: with `a = phi(r)` and `b = g(-1/r)`, `g` read from the
/// `t_21` images, the images of
/// `t_12^r t_21^(-1/r) t_12^r` and `t_21^(-1/r) t_12^r t_21^(-1/r)` agree,
/// forcing `a b = -1` and making the image of `sigma_r` antidiagonal.
fn replay_sigma(
    source: &RingSpec,
    target: &RingSpec,
    elts: &[RingElt],
    phi: &[RingElt],
    g: &[RingElt],
) -> Result<()> {
    let minus_one = -&target.one();
    let sigma_one = sigma(2, 0, 1, &target.one())?;
    for (i, r) in elts.iter().enumerate() {
        if !r.is_unit() {
            continue;
        }
        let a = &phi[i];
        let b = &g[source.index_of(&-&r.inverse()?) as usize];
        let left = transvection(2, 0, 1, a)?
            .mul(&transvection(2, 1, 0, b)?)
            .mul(&transvection(2, 0, 1, a)?);
        let right = transvection(2, 1, 0, b)?
            .mul(&transvection(2, 0, 1, a)?)
            .mul(&transvection(2, 1, 0, b)?);
        if left != right || a * b != minus_one {
            return Err(not_hom("sigma", format!("r = {r}: phi(r) = {a}, g(-1/r) = {b}")));
        }
        let expected = sigma(2, 0, 1, a)?;
        if left != expected {
            return Err(not_hom("sigma", format!("image of sigma_{r} is {left}")));
        }
        let d = left.mul(&sigma_one.inverse()?);
        if d != Mat::diagonal(&[a.clone(), a.inverse()?]) {
            return Err(not_hom("diagonal", format!("image of d({r}, 1/{r}) is {d}")));
        }
    }
    Ok(())
}

/// Whether some `K` in `I + M_n(m_S)` conjugates one family onto the other.
pub fn strictly_equivalent(x: &GeneratorLift, y: &GeneratorLift) -> Result<bool> {
    if x.source() != y.source() || x.target() != y.target() || x.n() != y.n() {
        return Err(Error::MixedRings);
    }
    let images: Vec<(&Mat, &Mat)> = x
        .entries()
        .zip(y.entries())
        .map(|((_, _, p), (_, _, q))| (p, q))
        .collect();
    let kernel = congruence_kernel(x.target(), x.n(), KERNEL_LIMIT)?;
    Ok(kernel
        .iter()
        .any(|k| images.iter().all(|(p, q)| k.mul(p) == q.mul(k))))
}
