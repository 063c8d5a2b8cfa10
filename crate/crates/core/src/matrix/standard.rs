use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localring::{RingElt, RingSpec};

use super::Mat;

fn check_pair(n: usize, a: usize, b: usize) -> Result<()> {
    if a == b || a >= n || b >= n {
        return Err(Error::BadIndices(format!("({a}, {b}) for n = {n}")));
    }
    Ok(())
}

fn check_unit(u: &RingElt) -> Result<()> {
    if u.is_unit() {
        Ok(())
    } else {
        Err(Error::NonUnitParameter(u.to_string()))
    }
}

/// The elementary matrix `e_ab`.
pub fn unit_matrix(ring: &RingSpec, n: usize, a: usize, b: usize) -> Mat {
    let mut m = Mat::zeros(ring, n);
    m.set(a, b, &ring.one());
    m
}

/// The transvection `t_ab^r = I + r e_ab` (indices are 0-based).
pub fn transvection(n: usize, a: usize, b: usize, r: &RingElt) -> Result<Mat> {
    check_pair(n, a, b)?;
    let mut m = Mat::identity(r.ring(), n);
    m.set(a, b, r);
    Ok(m)
}

/// The diagonal matrix `d(u_1, ..., u_n)` with unit entries.
pub fn diag(entries: &[RingElt]) -> Result<Mat> {
    entries.iter().try_for_each(check_unit)?;
    Ok(Mat::diagonal(entries))
}

/// `d_ab^u`: `u` at position `a`, `u^{-1}` at position `b`, ones elsewhere.
pub fn diag_pair(n: usize, a: usize, b: usize, u: &RingElt) -> Result<Mat> {
    check_pair(n, a, b)?;
    check_unit(u)?;
    let mut m = Mat::identity(u.ring(), n);
    m.set(a, a, u);
    m.set(b, b, &u.inverse()?);
    Ok(m)
}

/// `sigma_ab^u = I - e_aa - e_bb + u e_ab - u^{-1} e_ba`.
pub fn sigma(n: usize, a: usize, b: usize, u: &RingElt) -> Result<Mat> {
    check_pair(n, a, b)?;
    check_unit(u)?;
    let ring = u.ring();
    let mut m = Mat::identity(ring, n);
    m.set(a, a, &ring.zero());
    m.set(b, b, &ring.zero());
    m.set(a, b, u);
    m.set(b, a, &-u.inverse()?);
    Ok(m)
}

/// One factor `t_ab^r` of a [`TransvectionWord`].
#[derive(Clone, PartialEq, Eq)]
pub struct Transvection {
    pub a: usize,
    pub b: usize,
    pub r: RingElt,
}

impl fmt::Debug for Transvection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{}{}^({})", self.a + 1, self.b + 1, self.r)
    }
}

/// A product of transvections, evaluated left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionWord {
    pub n: usize,
    pub factors: Vec<Transvection>,
}

impl TransvectionWord {
    pub fn new(n: usize) -> Self {
        TransvectionWord {
            n,
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, a: usize, b: usize, r: RingElt) {
        if !r.is_zero() {
            self.factors.push(Transvection { a, b, r });
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn evaluate(&self, ring: &RingSpec) -> Mat {
        self.factors.iter().fold(Mat::identity(ring, self.n), |acc, t| {
            acc.mul(&transvection(self.n, t.a, t.b, &t.r).expect("valid word"))
        })
    }

    /// The word of the inverse matrix.
    pub fn inverse(&self) -> TransvectionWord {
        TransvectionWord {
            n: self.n,
            factors: self
                .factors
                .iter()
                .rev()
                .map(|t| Transvection {
                    a: t.a,
                    b: t.b,
                    r: -&t.r,
                })
                .collect(),
        }
    }

    pub fn extend(&mut self, other: &TransvectionWord) {
        self.factors.extend(other.factors.iter().cloned());
    }

    /// Serializable `(a, b, r)` triples with 0-based indices.
    pub fn triples(&self) -> Vec<WordTriple> {
        self.factors
            .iter()
            .map(|t| WordTriple {
                a: t.a,
                b: t.b,
                r: t.r.coeffs().to_vec(),
            })
            .collect()
    }
}

impl fmt::Display for TransvectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|t| format!("t_{}{}^({})", t.a + 1, t.b + 1, t.r))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTriple {
    pub a: usize,
    pub b: usize,
    pub r: Vec<u64>,
}

/// Returns `lambda` with `m = lambda I` when `m` commutes with every
/// `t_ab^1`; otherwise the first pair `(a, b)` that fails to commute.
pub fn scalar_if_centralizes(m: &Mat) -> std::result::Result<RingElt, (usize, usize)> {
    let n = m.n();
    let one = m.ring().one();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let t = transvection(n, a, b, &one).expect("valid pair");
            if t.mul(m) != m.mul(&t) {
                return Err((a, b));
            }
        }
    }
    Ok(m.get(0, 0))
}

/// How [`express_as_commutator`] picks its factors.
#[derive(Clone, Debug)]
pub enum CommutatorStrategy {
    /// `n >= 3`: `[t_ac^r, t_cb^1]` through the least free index `c`;
    /// `n = 2`: `[d_ab^alpha, t_ab^s]` with `alpha` the lift of the least
    /// residue having `alpha^2 - 1` a unit.
    Auto,
    /// `[t_ac^left, t_cb^right]` with `left * right = r`.
    Through {
        via: usize,
        left: RingElt,
        right: RingElt,
    },
    /// `[d_ab^alpha, t_ab^s]` with `s = r (alpha^2 - 1)^{-1}`.
    Diagonal { alpha: RingElt },
}

/// Matrices `(P, Q)` with `P Q P^{-1} Q^{-1} = t_ab^r`.
pub fn express_as_commutator(
    n: usize,
    a: usize,
    b: usize,
    r: &RingElt,
    strategy: &CommutatorStrategy,
) -> Result<(Mat, Mat)> {
    check_pair(n, a, b)?;
    let ring = r.ring();
    let through = |c: usize, left: &RingElt, right: &RingElt| -> Result<(Mat, Mat)> {
        if c == a || c == b || c >= n {
            return Err(Error::BadIndices(format!("intermediate index {c}")));
        }
        Ok((transvection(n, a, c, left)?, transvection(n, c, b, right)?))
    };
    let diagonal = |alpha: &RingElt| -> Result<(Mat, Mat)> {
        let w = &(alpha * alpha) - &ring.one();
        if !alpha.is_unit() || !w.is_unit() {
            return Err(Error::NonUnitParameter(format!("{alpha} (alpha^2 - 1 must be a unit)")));
        }
        let s = r * &w.inverse()?;
        Ok((diag_pair(n, a, b, alpha)?, transvection(n, a, b, &s)?))
    };
    match strategy {
        CommutatorStrategy::Auto if n >= 3 => {
            let c = (0..n).find(|&c| c != a && c != b).expect("n >= 3");
            through(c, r, &ring.one())
        }
        CommutatorStrategy::Auto => {
            let kq = ring.residue_field_size();
            if kq <= 3 {
                return Err(Error::UnsupportedCase(format!(
                    "n = 2 over a ring with residue field of size {kq}"
                )));
            }
            let alpha = residue_unit_with_unit_square_minus_one(ring)
                .ok_or_else(|| Error::UnsupportedCase("no suitable diagonal element".into()))?;
            diagonal(&alpha)
        }
        CommutatorStrategy::Through { via, left, right } => {
            if &(left * right) != r {
                return Err(Error::PreconditionViolated(format!("{left} * {right} != {r}")));
            }
            through(*via, left, right)
        }
        CommutatorStrategy::Diagonal { alpha } => diagonal(alpha),
    }
}

/// The least element, in the canonical order, that is a unit with
/// `alpha^2 - 1` also a unit.
fn residue_unit_with_unit_square_minus_one(ring: &RingSpec) -> Option<RingElt> {
    let k = ring.residue_field();
    let alpha = k
        .elements()
        .find(|c| c.is_unit() && (&(c * c) - &k.one()).is_unit())?;
    Some(crate::localring::lift_residue(ring, &alpha))
}
