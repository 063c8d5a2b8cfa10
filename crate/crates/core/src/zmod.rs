//! Linear algebra over `Z/p^a`.
//!
//! Submodules of `(Z/p^a)^N` are kept in Howell normal form: pivot rows with
//! strictly increasing pivot columns, pivots normalized to powers of `p`,
//! entries above each pivot reduced modulo that pivot, and the Howell
//! property (every element of the span whose first `c` entries vanish is a
//! combination of the rows with pivot column `>= c`). The form is unique for
//! a given submodule, so two lattices are equal iff their rows are.

use std::fmt;

/// The coefficient ring `Z/p^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZMod {
    p: u64,
    a: u32,
    q: u64,
}

impl ZMod {
    pub fn new(p: u64, a: u32) -> Self {
        let q = p.checked_pow(a).expect("p^a overflows u64");
        ZMod { p, a, q }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.a
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn reduce_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.q as i128) as u64
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            self.q - (y - x)
        }
    }

    #[inline]
    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.q - x
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.q as u128) as u64
    }

    /// p-adic valuation, with `valuation(0) == a`.
    pub fn valuation(&self, mut x: u64) -> u32 {
        if x == 0 {
            return self.a;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        !x.is_multiple_of(self.p)
    }

    /// Inverse of a unit via extended Euclid on the integer representatives.
    pub fn inv(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x) {
            return None;
        }
        let (mut r0, mut r1) = (self.q as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quo = r0 / r1;
            (r0, r1) = (r1, r0 - quo * r1);
            (t0, t1) = (t1, t0 - quo * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(t0))
    }

    pub fn pow_p(&self, v: u32) -> u64 {
        self.p.pow(v)
    }
}

/// A submodule of `(Z/p^a)^ncols` in Howell normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    zm: ZMod,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    /// `(column, valuation)` of each row's pivot.
    pivots: Vec<(usize, u32)>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("modulus", &self.zm.q)
            .field("rows", &self.rows)
            .finish()
    }
}

impl Lattice {
    pub fn zero(zm: ZMod, ncols: usize) -> Self {
        Lattice {
            zm,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The span of `gens`; every generator must have length `ncols`.
    pub fn span(zm: ZMod, ncols: usize, gens: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut work: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|mut v| {
                assert_eq!(v.len(), ncols, "generator length mismatch");
                for x in v.iter_mut() {
                    *x %= zm.q;
                }
                v
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();

        for col in 0..ncols {
            let best = work
                .iter()
                .enumerate()
                .map(|(i, r)| (zm.valuation(r[col]), i))
                .filter(|&(v, _)| v < zm.a)
                .min();
            let Some((v, idx)) = best else { continue };
            let mut piv = work.swap_remove(idx);
            let unit = piv[col] / zm.pow_p(v);
            let uinv = zm.inv(unit).expect("pivot unit part must be invertible");
            for x in piv.iter_mut() {
                *x = zm.mul(*x, uinv);
            }
            let pv = zm.pow_p(v);
            debug_assert_eq!(piv[col], pv);
            for r in work.iter_mut() {
                if r[col] != 0 {
                    let w = r[col] / pv;
                    for (x, &y) in r.iter_mut().zip(piv.iter()) {
                        *x = zm.sub(*x, zm.mul(w, y));
                    }
                    debug_assert_eq!(r[col], 0);
                }
            }
            if v > 0 {
                let ann = zm.pow_p(zm.a - v);
                let extra: Vec<u64> = piv.iter().map(|&y| zm.mul(ann, y)).collect();
                if extra.iter().any(|&x| x != 0) {
                    work.push(extra);
                }
            }
            work.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(piv);
            pivots.push((col, v));
        }

        // Reduce entries above pivots.
        for i in 0..rows.len() {
            let (c, v) = pivots[i];
            let pv = zm.pow_p(v);
            let (above, rest) = rows.split_at_mut(i);
            let row_i = &rest[0];
            for row_j in above.iter_mut() {
                let t = row_j[c] / pv;
                if t != 0 {
                    for (x, &y) in row_j.iter_mut().zip(row_i.iter()) {
                        *x = zm.sub(*x, zm.mul(t, y));
                    }
                }
            }
        }

        Lattice {
            zm,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn modulus(&self) -> ZMod {
        self.zm
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `log_p` of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.pivots.iter().map(|&(_, v)| self.zm.a - v).sum()
    }

    /// Canonical representative of `x` modulo the lattice, in place.
    pub fn reduce(&self, x: &mut [u64]) {
        debug_assert_eq!(x.len(), self.ncols);
        for (row, &(c, v)) in self.rows.iter().zip(self.pivots.iter()) {
            let t = x[c] / self.zm.pow_p(v);
            if t != 0 {
                for (xi, &y) in x.iter_mut().zip(row.iter()) {
                    *xi = self.zm.sub(*xi, self.zm.mul(t, y));
                }
            }
        }
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        let mut y: Vec<u64> = x.iter().map(|&v| v % self.zm.q).collect();
        self.reduce(&mut y);
        y.iter().all(|&v| v == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ncols, other.ncols);
        Lattice::span(
            self.zm,
            self.ncols,
            self.rows.iter().chain(other.rows.iter()).cloned(),
        )
    }

    /// For each column, the exclusive upper bound of its entry in a reduced
    /// vector: `p^v` at pivot columns, `q` elsewhere.
    pub fn reduced_bounds(&self) -> Vec<u64> {
        let mut b = vec![self.zm.q; self.ncols];
        for &(c, v) in &self.pivots {
            b[c] = self.zm.pow_p(v);
        }
        b
    }
}

/// Kernel of the linear map `e_i -> images[i]`, as a lattice in
/// `(Z/q)^images.len()`.
pub fn kernel(zm: ZMod, out_dim: usize, images: &[Vec<u64>]) -> Lattice {
    let n = images.len();
    let rows = images.iter().enumerate().map(|(i, img)| {
        assert_eq!(img.len(), out_dim);
        let mut r = Vec::with_capacity(out_dim + n);
        r.extend_from_slice(img);
        r.extend((0..n).map(|j| u64::from(i == j)));
        r
    });
    let h = Lattice::span(zm, out_dim + n, rows);
    let tail = h
        .rows
        .iter()
        .zip(h.pivots.iter())
        .filter(|(_, &(c, _))| c >= out_dim)
        .map(|(r, _)| r[out_dim..].to_vec());
    Lattice::span(zm, n, tail)
}

/// Coefficients `c` with `sum c_i gens[i] == target`, if any exist.
pub fn express(zm: ZMod, gens: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let m = target.len();
    let n = gens.len();
    let rows = gens.iter().enumerate().map(|(i, g)| {
        let mut r = Vec::with_capacity(m + n);
        r.extend_from_slice(g);
        r.extend((0..n).map(|j| u64::from(i == j)));
        r
    });
    let h = Lattice::span(zm, m + n, rows);
    let mut x: Vec<u64> = target.iter().map(|&v| v % zm.q).collect();
    x.extend(std::iter::repeat_n(0, n));
    h.reduce(&mut x);
    if x[..m].iter().any(|&v| v != 0) {
        return None;
    }
    Some(x[m..].iter().map(|&v| zm.neg(v)).collect())
}

/// Dimension of the span of `vectors` over `F_p` (only meaningful for `a == 1`).
pub fn rank(zm: ZMod, ncols: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> usize {
    Lattice::span(zm, ncols, vectors).rows.len()
}
