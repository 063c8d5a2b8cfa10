use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::localring::{RingElt, RingHom, RingSpec};

/// A square matrix over a [`RingSpec`], stored row-major as one flat vector
/// of canonical coefficient vectors (`n * n * d` words).
#[derive(Clone)]
pub struct Mat {
    ring: RingSpec,
    n: usize,
    data: Vec<u64>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.data == other.data && self.ring == other.ring
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the row-major serialization.
impl Ord for Mat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.data.cmp(&other.data)
    }
}

impl Mat {
    pub fn zeros(ring: &RingSpec, n: usize) -> Mat {
        Mat {
            ring: ring.clone(),
            n,
            data: vec![0; n * n * ring.degree()],
        }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Mat {
        Mat::scalar(&ring.one(), n)
    }

    pub fn scalar(c: &RingElt, n: usize) -> Mat {
        let mut m = Mat::zeros(c.ring(), n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    /// Builds a matrix from rows of elements.
    pub fn from_rows(ring: &RingSpec, rows: &[Vec<RingElt>]) -> Result<Mat> {
        let n = rows.len();
        let mut m = Mat::zeros(ring, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadIndices(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, x) in row.iter().enumerate() {
                if x.ring() != ring {
                    return Err(Error::MixedRings);
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from integer rows.
    pub fn from_ints(ring: &RingSpec, rows: &[&[i128]]) -> Mat {
        let rows: Vec<Vec<RingElt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_int(v)).collect())
            .collect();
        Mat::from_rows(ring, &rows).expect("square integer matrix")
    }

    pub fn diagonal(entries: &[RingElt]) -> Mat {
        let ring = entries[0].ring();
        let mut m = Mat::zeros(ring, entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn d(&self) -> usize {
        self.ring.degree()
    }

    fn slot(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let d = self.d();
        let s = (i * self.n + j) * d;
        s..s + d
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> &[u64] {
        &self.data[self.slot(i, j)]
    }

    /// Raw row-major storage.
    pub fn raw_data(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> RingElt {
        RingElt::from_raw(self.ring.clone(), self.raw(i, j).iter().copied().collect())
    }

    pub fn set(&mut self, i: usize, j: usize, x: &RingElt) {
        debug_assert!(x.ring() == &self.ring);
        let s = self.slot(i, j);
        self.data[s].copy_from_slice(x.coeffs());
    }

    pub fn entries(&self) -> Vec<Vec<RingElt>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        let one = self.ring.one();
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.raw(i, j);
                if i == j {
                    x == one.coeffs()
                } else {
                    x.iter().all(|&v| v == 0)
                }
            })
        })
    }

    /// The scalar `c` if this is `c * I`.
    pub fn as_scalar(&self) -> Option<RingElt> {
        let c = self.get(0, 0);
        (*self == Mat::scalar(&c, self.n)).then_some(c)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        debug_assert!(self.ring == other.ring, "mixed rings");
        let n = self.n;
        let d = self.d();
        assert!(n * d <= 256, "matrix too large for exact accumulation");
        let mut out = Mat::zeros(&self.ring, n);
        if d == 1 {
            let zm = self.ring.zm();
            let q = zm.modulus() as u128;
            let plain = self.ring.relation_lattice().is_zero();
            for i in 0..n {
                for j in 0..n {
                    let mut acc: u128 = 0;
                    for k in 0..n {
                        acc += self.data[i * n + k] as u128 * other.data[k * n + j] as u128;
                    }
                    let v = (acc % q) as u64;
                    out.data[i * n + j] = if plain {
                        v
                    } else {
                        let mut c = [v];
                        self.ring.normalize(&mut c);
                        c[0]
                    };
                }
            }
            return out;
        }
        let mut acc = vec![0u128; 2 * d - 1];
        for i in 0..n {
            for j in 0..n {
                acc.iter_mut().for_each(|v| *v = 0);
                for k in 0..n {
                    self.ring.mul_acc(&mut acc, self.raw(i, k), other.raw(k, j));
                }
                let r = self.ring.reduce_wide(&acc);
                let s = out.slot(i, j);
                out.data[s].copy_from_slice(&r);
            }
        }
        out
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&RingElt, &RingElt) -> RingElt) -> Mat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Mat::zeros(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, &f(&self.get(i, j), &other.get(i, j)));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Mat {
        self.scale(&-self.ring.one())
    }

    pub fn scale(&self, c: &RingElt) -> Mat {
        self.map(|x| c * x)
    }

    pub fn map(&self, f: impl Fn(&RingElt) -> RingElt) -> Mat {
        let mut out = Mat::zeros(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, &f(&self.get(i, j)));
            }
        }
        out
    }

    /// Applies a ring homomorphism entrywise.
    pub fn apply_hom(&self, f: &RingHom) -> Mat {
        let t = f.target();
        let mut out = Mat::zeros(t, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, &f.apply(&self.get(i, j)));
            }
        }
        out
    }

    /// Entrywise reduction to the residue field.
    pub fn residue(&self) -> Mat {
        let k = self.ring.residue_field();
        let mut out = Mat::zeros(&k, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, &self.get(i, j).residue());
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, &self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> RingElt {
        (0..self.n).fold(self.ring.zero(), |acc, i| &acc + &self.get(i, i))
    }

    /// Determinant by expansion over column subsets, division free and
    /// therefore valid over rings with zero divisors.
    pub fn det(&self) -> RingElt {
        let n = self.n;
        assert!(n <= 16, "determinant expansion limited to n <= 16");
        let mut minors: Vec<Option<RingElt>> = vec![None; 1 << n];
        minors[0] = Some(self.ring.one());
        for mask in 1usize..(1 << n) {
            // Expand the minor on rows 0..k and columns `mask` along row k - 1.
            let row = mask.count_ones() as usize - 1;
            let mut acc = self.ring.zero();
            for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
                let rest = minors[mask ^ (1 << col)].as_ref().unwrap();
                let term = &self.get(row, col) * rest;
                acc = if (row + pos) % 2 == 1 { &acc - &term } else { &acc + &term };
            }
            minors[mask] = Some(acc);
        }
        minors.pop().unwrap().unwrap()
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n;
        let mut a = self.entries();
        let mut inv = Mat::identity(&self.ring, n).entries();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r][col].is_unit())
                .ok_or(Error::NotInvertible)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let pinv = a[col][col].inverse()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &pinv;
                inv[col][j] = &inv[col][j] * &pinv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                        inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                    }
                }
            }
        }
        Mat::from_rows(&self.ring, &inv)
    }

    /// Integer powers, negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Result<Mat> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Mat::identity(&self.ring, self.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(x: &Mat, y: &Mat) -> Result<Mat> {
        Ok(x.mul(y).mul(&x.inverse()?).mul(&y.inverse()?))
    }

    /// Whether every entry of `self - I` lies in the given ideal.
    pub fn congruent_to_identity(&self, ideal: &crate::localring::Ideal) -> bool {
        let diff = self.sub(&Mat::identity(&self.ring, self.n));
        (0..self.n).all(|i| (0..self.n).all(|j| ideal.contains(&diff.get(i, j))))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
