//! Integer polynomials (for presentations and Chebyshev recursions) and
//! polynomial arithmetic over prime fields (for the localness test).

use std::fmt;

use crate::error::{Error, Result};

/// A polynomial with integer coefficients, little-endian, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<i128>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: i128) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn x() -> Self {
        IntPoly(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly::new(
            (0..n)
                .map(|i| self.coeff(i).checked_add(other.coeff(i)).expect("overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                let t = a.checked_mul(b).expect("overflow");
                out[i + j] = out[i + j].checked_add(t).expect("overflow");
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::constant(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, x: i128) -> i128 {
        self.0.iter().rev().fold(0i128, |acc, &c| acc * x + c)
    }

    pub fn parse(s: &str) -> Result<IntPoly> {
        let mut p = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src: s,
        };
        let poly = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "x")?,
                (1, m) => write!(f, "{m}*x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, m) => write!(f, "{m}*x^{e}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(c) if c == '(' || c == 'x' || c == 'X' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u128> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some('x') | Some('X') => {
                self.pos += 1;
                Ok(IntPoly::x())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                let v = i128::try_from(v).map_err(|_| self.error("integer out of range"))?;
                Ok(IntPoly::constant(v))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Polynomials over `F_p`, little-endian and trimmed.
pub(crate) mod fp {
    pub type Poly = Vec<u64>;

    pub fn trim(mut f: Poly) -> Poly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    fn inv(x: u64, p: u64) -> u64 {
        pow_mod(x, p - 2, p)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    }

    pub fn sub(f: &[u64], g: &[u64], p: u64) -> Poly {
        let n = f.len().max(g.len());
        trim(
            (0..n)
                .map(|i| {
                    let a = f.get(i).copied().unwrap_or(0);
                    let b = g.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(f: &[u64], g: &[u64], p: u64) -> Poly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b % p) % p;
            }
        }
        trim(out)
    }

    /// `(quotient, remainder)` of `f / g`, `g` nonzero.
    pub fn divrem(f: &[u64], g: &[u64], p: u64) -> (Poly, Poly) {
        let g = trim(g.to_vec());
        assert!(!g.is_empty(), "division by zero polynomial");
        let mut r = trim(f.to_vec());
        if r.len() < g.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv(*g.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - g.len() + 1];
        while r.len() >= g.len() {
            let shift = r.len() - g.len();
            let c = r.last().unwrap() * lead_inv % p;
            q[shift] = c;
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * gi % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(f: &[u64], p: u64) -> Poly {
        let f = trim(f.to_vec());
        match f.last() {
            None => f,
            Some(&l) => {
                let li = inv(l, p);
                f.iter().map(|&c| c * li % p).collect()
            }
        }
    }

    pub fn gcd(f: &[u64], g: &[u64], p: u64) -> Poly {
        let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// `x^e mod m`.
    pub fn x_pow_mod(e: u128, m: &[u64], p: u64) -> Poly {
        let mut acc: Poly = vec![1];
        let mut base: Poly = divrem(&[0, 1], m, p).1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = divrem(&mul(&acc, &base, p), m, p).1;
            }
            base = divrem(&mul(&base, &base, p), m, p).1;
            e >>= 1;
        }
        divrem(&acc, m, p).1
    }

    /// If the monic `f` (degree >= 1) is `h^e` for an irreducible `h`,
    /// returns `(h, e)`. Uses distinct-degree factorization: the first
    /// degree `m` at which `gcd(f, x^{p^m} - x)` is nontrivial gives the
    /// product of the irreducible factors of degree `m`.
    pub fn irreducible_power(f: &[u64], p: u64) -> Option<(Poly, u32)> {
        let f = monic(f, p);
        let d = f.len() - 1;
        for m in 1..=d {
            let xq = x_pow_mod((p as u128).pow(m as u32), &f, p);
            let h = gcd(&f, &sub(&xq, &[0, 1], p), p);
            if h.len() > 1 {
                if h.len() - 1 != m || !d.is_multiple_of(m) {
                    return None;
                }
                let e = (d / m) as u32;
                let mut pw: Poly = vec![1];
                for _ in 0..e {
                    pw = mul(&pw, &h, p);
                }
                return (pw == f).then_some((h, e));
            }
        }
        None
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
