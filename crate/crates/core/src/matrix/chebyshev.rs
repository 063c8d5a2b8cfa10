//! Chebyshev-type polynomials `f_0 = 0, f_1 = 1, f_{j+1} = x f_j - f_{j-1}`
//! and the trace criterion for `M^n = -I` in `SL_2`.

use crate::error::{Error, Result};
use crate::localring::{RingElt, RingSpec};
use crate::poly::IntPoly;

use super::Mat;

pub fn chebyshev_poly(j: usize) -> IntPoly {
    let x = IntPoly::x();
    let (mut prev, mut cur) = (IntPoly::zero(), IntPoly::constant(1));
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates an integer polynomial at a ring element.
pub fn eval_int_poly(f: &IntPoly, at: &RingElt) -> RingElt {
    let ring = at.ring();
    f.coeffs()
        .iter()
        .rev()
        .fold(ring.zero(), |acc, &c| &(&acc * at) + &ring.from_int(c))
}

/// Whether `x` is a zero divisor, by scanning for a nonzero annihilator.
pub fn is_zero_divisor(x: &RingElt) -> bool {
    let ring: &RingSpec = x.ring();
    match ring.size() {
        Some(size) if size <= 1_000_000 => ring.elements().any(|y| !y.is_zero() && (x * &y).is_zero()),
        // In a finite ring the non-zero-divisors are exactly the units.
        _ => !x.is_unit(),
    }
}

/// For a 2x2 matrix of determinant 1 and odd `n = 2k + 1`, returns
/// `(M^n = -I, (f_{k+1} - f_k)(tr M) = 0)`.
pub fn minus_identity_power_test(m: &Mat, n: u32) -> Result<(bool, bool)> {
    if m.n() != 2 {
        return Err(Error::PreconditionViolated("matrix must be 2x2".into()));
    }
    if n.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!("exponent {n} must be odd")));
    }
    if !m.det().is_one() {
        return Err(Error::PreconditionViolated("determinant is not 1".into()));
    }
    if is_zero_divisor(&m.get(0, 1)) && is_zero_divisor(&m.get(1, 0)) {
        return Err(Error::PreconditionViolated(
            "both off-diagonal entries are zero divisors".into(),
        ));
    }
    let k = (n / 2) as usize;
    let direct = m.pow(n as i64)? == Mat::identity(m.ring(), 2).neg();
    let f = chebyshev_poly(k + 1).sub(&chebyshev_poly(k));
    let by_trace = eval_int_poly(&f, &m.trace()).is_zero();
    Ok((direct, by_trace))
}
