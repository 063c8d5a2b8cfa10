use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

use super::spec::Coeffs;
use super::RingSpec;

/// An element of a [`RingSpec`], stored as its canonical coefficient vector
/// (little-endian in `x`, reduced modulo `g` and `J`).
#[derive(Clone)]
pub struct RingElt {
    ring: RingSpec,
    c: Coeffs,
}

impl PartialEq for RingElt {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.ring == other.ring
    }
}

impl Eq for RingElt {}

impl Hash for RingElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for RingElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coefficient vectors, constant term first; this is
/// the canonical element order used throughout.
impl Ord for RingElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.c.cmp(&other.c)
    }
}

impl RingElt {
    pub(crate) fn from_raw(ring: RingSpec, c: Coeffs) -> Self {
        RingElt { ring, c }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    fn check(&self, other: &RingElt) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn try_add(&self, other: &RingElt) -> Result<RingElt> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &RingElt) -> Result<RingElt> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn scale(&self, k: i128) -> RingElt {
        self.mul(&self.ring.from_int(k))
    }

    pub fn pow(&self, mut e: u128) -> RingElt {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue class in the residue field.
    pub fn residue(&self) -> RingElt {
        let k = self.ring.residue_field();
        let c = self.ring.residue_raw(&self.c);
        RingElt::from_raw(k, c)
    }

    /// In a local ring an element is a unit iff its residue is nonzero.
    pub fn is_unit(&self) -> bool {
        !self.ring.residue_raw(&self.c).iter().all(|&v| v == 0)
    }

    pub fn in_max_ideal(&self) -> bool {
        !self.is_unit()
    }

    /// Multiplicative inverse: invert the residue by exponentiation, then
    /// refine with Newton steps `y <- y (2 - x y)`, which doubles the
    /// precision each time.
    pub fn inverse(&self) -> Result<RingElt> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let ring = &self.ring;
        let kq = ring.residue_field_size() as u128;
        // x^(#k - 2) inverts x modulo m.
        let mut y = self.pow(kq - 2);
        let two = ring.from_int(2);
        let mut steps = 0;
        loop {
            let xy = self * &y;
            if xy.is_one() {
                return Ok(y);
            }
            y = &y * &(&two - &xy);
            steps += 1;
            if steps > 64 {
                return Err(Error::NoConvergence);
            }
        }
    }

    /// Valuation in the maximal-ideal filtration: the largest `l` with
    /// `self` in `m^l` (the nilpotency index for zero).
    pub fn m_adic_valuation(&self) -> u32 {
        if self.is_zero() {
            return self.ring.nilpotency_index();
        }
        let mut l = 0;
        while super::Ideal::max_power(&self.ring, l + 1).contains(self) {
            l += 1;
        }
        l
    }

    /// Evaluates the polynomial `f` (coefficients in this ring) at `self`.
    pub fn eval_poly(f: &[RingElt], at: &RingElt) -> RingElt {
        f.iter()
            .rev()
            .fold(at.ring.zero(), |acc, c| &(&acc * at) + c)
    }

    /// Renders as an integer polynomial in `x` with coefficients in `[0, p^a)`.
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&v| v as i128).collect())
    }
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait<&RingElt> for &RingElt {
            type Output = RingElt;
            fn $method(self, rhs: &RingElt) -> RingElt {
                debug_assert!(self.ring == rhs.ring, "mixed rings");
                RingElt::from_raw(self.ring.clone(), self.ring.$raw(&self.c, &rhs.c))
            }
        }
        impl $trait<RingElt> for RingElt {
            type Output = RingElt;
            fn $method(self, rhs: RingElt) -> RingElt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RingElt> for RingElt {
            type Output = RingElt;
            fn $method(self, rhs: &RingElt) -> RingElt {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt::from_raw(self.ring.clone(), self.ring.neg_raw(&self.c))
    }
}

impl Neg for RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        -&self
    }
}
