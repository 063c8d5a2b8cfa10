use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::{fp, is_prime, IntPoly};
use crate::zmod::{Lattice, ZMod};

use super::RingElt;

pub(crate) type Coeffs = SmallVec<[u64; 2]>;

/// Largest admissible coefficient modulus; keeps `n * d` accumulated
/// products of two coefficients inside a `u128`.
const MAX_MODULUS: u64 = 1 << 60;

/// A finite local ring `Z/p^a[x]/(g(x), J)`.
///
/// Construction validates localness and canonicalizes the presentation:
/// the exponent `a` is lowered to the least `b` with `p^b = 0`, and `g` is
/// replaced by the lowest-degree monic polynomial in the ideal `(g, J)`.
/// Cheap to clone; all clones share the same data.
#[derive(Clone)]
pub struct RingSpec(pub(crate) Arc<RingData>);

pub(crate) struct RingData {
    pub(crate) zm: ZMod,
    /// Monic modulus, little-endian, length `d + 1`.
    pub(crate) g: Vec<u64>,
    /// Extra relations as a lattice in reversed coordinates (highest degree
    /// first) so that reduction eliminates leading terms first.
    pub(crate) ideal: Lattice,
    /// Irreducible factor of `g mod p`, monic over `F_p`.
    pub(crate) h: Vec<u64>,
    pub(crate) e: u32,
    pub(crate) residue_field: Option<RingSpec>,
    pub(crate) max_ideal: Lattice,
    pub(crate) nil_index: u32,
    /// Exclusive bound on each coefficient of a canonical element.
    pub(crate) bounds: Vec<u64>,
    pub(crate) size_log: u32,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.zm == other.0.zm && self.0.g == other.0.g && self.0.ideal == other.0.ideal)
    }
}

impl Eq for RingSpec {}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({self})")
    }
}

/// Result of canonicalizing a presentation: the ring and the class of the
/// original generator `x` in it.
pub(crate) struct Canonical {
    pub(crate) ring: RingSpec,
    pub(crate) x_image: Vec<u64>,
}

fn reduce_poly_mod(zm: ZMod, f: &[u64], g: &[u64]) -> Vec<u64> {
    // g monic
    let d = g.len() - 1;
    let mut r: Vec<u64> = f.iter().map(|&c| c % zm.modulus()).collect();
    while r.len() > d {
        let c = r.pop().unwrap();
        if c != 0 {
            let shift = r.len() - d;
            for j in 0..d {
                r[shift + j] = zm.sub(r[shift + j], zm.mul(c, g[j]));
            }
        }
    }
    r.resize(d, 0);
    r
}

fn poly_mul_mod(zm: ZMod, x: &[u64], y: &[u64], g: &[u64]) -> Vec<u64> {
    let mut t = vec![0u64; x.len() + y.len()];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            t[i + j] = zm.add(t[i + j], zm.mul(a, b));
        }
    }
    reduce_poly_mod(zm, &t, g)
}

fn rev(v: &[u64]) -> Vec<u64> {
    v.iter().rev().copied().collect()
}

/// Lattice of the ideal generated by `gens` in `Z/q[x]/(g)`, reversed coordinates.
fn ideal_lattice(zm: ZMod, g: &[u64], gens: &[Vec<u64>]) -> Lattice {
    let d = g.len() - 1;
    let mut rows = Vec::new();
    for j in gens {
        let mut cur = reduce_poly_mod(zm, j, g);
        for _ in 0..d {
            rows.push(rev(&cur));
            let mut shifted = vec![0u64];
            shifted.extend_from_slice(&cur);
            cur = reduce_poly_mod(zm, &shifted, g);
        }
    }
    Lattice::span(zm, d, rows)
}

impl RingSpec {
    /// Builds `Z/p^a[x]/(g, J)`.
    pub fn new(p: u64, a: u32, g: &IntPoly, extra: &[IntPoly]) -> Result<RingSpec> {
        Ok(Self::canonical(p, a, g, extra)?.ring)
    }

    /// `Z/p^a`.
    pub fn zmod(p: u64, a: u32) -> Result<RingSpec> {
        Self::new(p, a, &IntPoly::x(), &[])
    }

    /// The dual numbers `F_p[e]/(e^2)`.
    pub fn dual_numbers(p: u64) -> Result<RingSpec> {
        Self::new(p, 1, &IntPoly::new(vec![0, 0, 1]), &[])
    }

    pub(crate) fn canonical(p: u64, a: u32, g: &IntPoly, extra: &[IntPoly]) -> Result<Canonical> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::InvalidRing("exponent must be at least 1".into()));
        }
        let q = p
            .checked_pow(a)
            .filter(|&q| q < MAX_MODULUS)
            .ok_or_else(|| Error::InvalidRing(format!("{p}^{a} exceeds the supported modulus")))?;
        let zm = ZMod::new(p, a);
        let deg = g
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidRing("modulus must have degree >= 1".into()))?;
        let lc = g.coeff(deg).rem_euclid(q as i128);
        if lc != 1 {
            return Err(Error::NotMonic(g.to_string()));
        }
        let to_zq = |f: &IntPoly| -> Vec<u64> {
            f.coeffs().iter().map(|&c| zm.reduce_i128(c)).collect()
        };
        let g0 = to_zq(g);
        let gbar: Vec<u64> = g0.iter().map(|&c| c % p).collect();
        let (h0, e0) = fp::irreducible_power(&gbar, p).ok_or_else(|| {
            Error::NotLocal(format!("{g} mod {p} is not a power of one irreducible polynomial"))
        })?;
        let jg: Vec<Vec<u64>> = extra.iter().map(to_zq).collect();
        Self::build(p, a, g0, jg, (h0, e0))
    }

    /// Canonicalizes a presentation whose `g mod p = h^e` is already known.
    pub(crate) fn build(
        p: u64,
        mut a: u32,
        mut g: Vec<u64>,
        mut jg: Vec<Vec<u64>>,
        local: (Vec<u64>, u32),
    ) -> Result<Canonical> {
        let mut zm = ZMod::new(p, a);
        // Class of the original x, as an unreduced polynomial.
        let mut x_poly: Vec<u64> = vec![0, 1];
        let lattice = loop {
            let d = g.len() - 1;
            let lat = ideal_lattice(zm, &g, &jg);
            let b = (0..a)
                .find(|&b| {
                    let mut v = vec![0u64; d];
                    v[d - 1] = zm.pow_p(b);
                    lat.contains(&v)
                })
                .unwrap_or(a);
            if b == 0 {
                return Err(Error::InvalidRing("the relations generate the unit ideal".into()));
            }
            if b < a {
                a = b;
                zm = ZMod::new(p, a);
                let q = zm.modulus();
                g.iter_mut().for_each(|c| *c %= q);
                jg.iter_mut().flatten().for_each(|c| *c %= q);
                x_poly.iter_mut().for_each(|c| *c %= q);
                continue;
            }
            // Lowest-degree monic element of the ideal, if below deg g.
            let monic = lat
                .rows()
                .iter()
                .zip(lat.pivots())
                .filter(|(_, &(_, v))| v == 0)
                .map(|(r, &(c, _))| (c, r))
                .max_by_key(|&(c, _)| c);
            if let Some((c, row)) = monic {
                let e = d - 1 - c;
                let mut g2 = rev(row);
                g2.truncate(e + 1);
                debug_assert_eq!(g2[e], 1);
                jg = jg
                    .iter()
                    .chain(std::iter::once(&g))
                    .map(|j| reduce_poly_mod(zm, j, &g2))
                    .collect();
                g = g2;
                continue;
            }
            break lat;
        };
        let mut x_image = reduce_poly_mod(zm, &x_poly, &g);
        let d = g.len() - 1;
        let (mut lattice, mut g) = (lattice, g);
        if d == 1 && g[0] != 0 {
            // Z/q[x]/(x - c) is Z/q with x = c; elements are already constants.
            g = vec![0, 1];
            lattice = Lattice::span(zm, 1, lattice.rows().iter().cloned());
            x_image = vec![x_image[0]];
        }
        let gbar: Vec<u64> = g.iter().map(|&c| c % p).collect();
        let (h, e) = fp::irreducible_power(&gbar, p).unwrap_or(local);

        // Residue field.
        let is_field = a == 1 && lattice.is_zero() && e == 1;
        let residue_field = if is_field {
            None
        } else if h.len() == 2 {
            Some(RingSpec::zmod(p, 1)?)
        } else {
            let hp = IntPoly::new(h.iter().map(|&c| c as i128).collect());
            Some(RingSpec::new(p, 1, &hp, &[])?)
        };

        // Maximal ideal: (p, h(x), J).
        let mut gens: Vec<Vec<u64>> = vec![vec![p % zm.modulus()], h.clone()];
        gens.extend(lattice.rows().iter().map(|r| rev(r)));
        let max_ideal = ideal_lattice(zm, &g, &gens).sum(&lattice);

        let bounds_rev = lattice.reduced_bounds();
        let bounds = rev(&bounds_rev);
        let size_log = a * d as u32 - lattice.log_size();

        let mut data = RingData {
            zm,
            g: g.clone(),
            ideal: lattice,
            h,
            e,
            residue_field,
            max_ideal,
            nil_index: 0,
            bounds,
            size_log,
        };
        data.nil_index = nilpotency(&data);
        let ring = RingSpec(Arc::new(data));
        let x_image = {
            let mut v = x_image;
            v.resize(d.min(g.len() - 1), 0);
            ring.normalize(&mut v);
            v
        };
        Ok(Canonical { ring, x_image })
    }

    pub fn p(&self) -> u64 {
        self.0.zm.p()
    }

    /// Exponent of the coefficient ring `Z/p^a`.
    pub fn exponent(&self) -> u32 {
        self.0.zm.exponent()
    }

    pub(crate) fn zm(&self) -> ZMod {
        self.0.zm
    }

    /// Degree of the modulus `g`; elements are coefficient vectors of this length.
    pub fn degree(&self) -> usize {
        self.0.g.len() - 1
    }

    pub fn modulus_poly(&self) -> IntPoly {
        IntPoly::new(self.0.g.iter().map(|&c| c as i128).collect())
    }

    /// Generators of the extra relations, as polynomials.
    pub fn relations(&self) -> Vec<IntPoly> {
        self.0
            .ideal
            .rows()
            .iter()
            .map(|r| IntPoly::new(r.iter().rev().map(|&c| c as i128).collect()))
            .collect()
    }

    /// Residue-field degree `m` (so `#k = p^m`).
    pub fn residue_degree(&self) -> usize {
        self.0.h.len() - 1
    }

    pub fn residue_field_size(&self) -> u64 {
        self.p().pow(self.residue_degree() as u32)
    }

    /// The residue field `k` as a ring (itself when this ring is a field).
    pub fn residue_field(&self) -> RingSpec {
        self.0.residue_field.clone().unwrap_or_else(|| self.clone())
    }

    pub fn is_field(&self) -> bool {
        self.0.residue_field.is_none()
    }

    /// `log_p` of the number of elements.
    pub fn size_log_p(&self) -> u32 {
        self.0.size_log
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.p().checked_pow(self.0.size_log)
    }

    /// Least `j` with `m^j = 0`.
    pub fn nilpotency_index(&self) -> u32 {
        self.0.nil_index
    }

    pub(crate) fn bounds(&self) -> &[u64] {
        &self.0.bounds
    }

    /// Reduces a coefficient vector modulo `J` in place.
    pub(crate) fn normalize(&self, c: &mut [u64]) {
        if self.0.ideal.is_zero() {
            return;
        }
        let mut r = rev(c);
        self.0.ideal.reduce(&mut r);
        for (dst, src) in c.iter_mut().zip(r.iter().rev()) {
            *dst = *src;
        }
    }

    pub(crate) fn to_lattice_coords(&self, c: &[u64]) -> Vec<u64> {
        rev(c)
    }

    pub(crate) fn from_lattice_coords(&self, c: &[u64]) -> Coeffs {
        let mut v: Coeffs = c.iter().rev().copied().collect();
        self.normalize(&mut v);
        v
    }

    pub(crate) fn ideal_lattice_of(&self, gens: &[Vec<u64>]) -> Lattice {
        ideal_lattice(self.0.zm, &self.0.g, gens).sum(&self.0.ideal)
    }

    pub(crate) fn relation_lattice(&self) -> &Lattice {
        &self.0.ideal
    }

    pub(crate) fn max_ideal_lattice(&self) -> &Lattice {
        &self.0.max_ideal
    }

    pub(crate) fn mul_raw(&self, x: &[u64], y: &[u64]) -> Coeffs {
        let zm = self.0.zm;
        if x.len() == 1 {
            let mut out: Coeffs = smallvec::smallvec![zm.mul(x[0], y[0])];
            self.normalize(&mut out);
            return out;
        }
        let mut acc = [0u128; 16];
        let mut big;
        let acc: &mut [u128] = if 2 * x.len() - 1 <= 16 {
            &mut acc[..2 * x.len() - 1]
        } else {
            big = vec![0u128; 2 * x.len() - 1];
            &mut big
        };
        self.mul_acc(acc, x, y);
        self.reduce_wide(acc)
    }

    /// Adds the polynomial product `x * y` into `acc` (length `2d - 1`).
    #[inline]
    pub(crate) fn mul_acc(&self, acc: &mut [u128], x: &[u64], y: &[u64]) {
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
    }

    /// Reduces an accumulated product to a canonical element.
    pub(crate) fn reduce_wide(&self, acc: &[u128]) -> Coeffs {
        let zm = self.0.zm;
        let q = zm.modulus() as u128;
        let d = self.degree();
        let mut t: SmallVec<[u64; 4]> = acc.iter().map(|&v| (v % q) as u64).collect();
        let g = &self.0.g;
        for i in (d..t.len()).rev() {
            let c = t[i];
            if c != 0 {
                for j in 0..d {
                    t[i - d + j] = zm.sub(t[i - d + j], zm.mul(c, g[j]));
                }
                t[i] = 0;
            }
        }
        let mut out: Coeffs = t[..d].iter().copied().collect();
        self.normalize(&mut out);
        out
    }

    pub(crate) fn add_raw(&self, x: &[u64], y: &[u64]) -> Coeffs {
        let zm = self.0.zm;
        let mut out: Coeffs = x.iter().zip(y).map(|(&a, &b)| zm.add(a, b)).collect();
        self.normalize(&mut out);
        out
    }

    pub(crate) fn sub_raw(&self, x: &[u64], y: &[u64]) -> Coeffs {
        let zm = self.0.zm;
        let mut out: Coeffs = x.iter().zip(y).map(|(&a, &b)| zm.sub(a, b)).collect();
        self.normalize(&mut out);
        out
    }

    pub(crate) fn neg_raw(&self, x: &[u64]) -> Coeffs {
        let zm = self.0.zm;
        let mut out: Coeffs = x.iter().map(|&a| zm.neg(a)).collect();
        self.normalize(&mut out);
        out
    }

    /// Residue of a raw element as a raw element of the residue field.
    pub(crate) fn residue_raw(&self, x: &[u64]) -> Coeffs {
        let p = self.p();
        let h = &self.0.h;
        if self.is_field() {
            return x.iter().copied().collect();
        }
        let xs: Vec<u64> = x.iter().map(|&c| c % p).collect();
        if h.len() == 2 {
            // h = x - root
            let root = (p - h[0] % p) % p;
            let v = xs
                .iter()
                .rev()
                .fold(0u64, |acc, &c| ((acc as u128 * root as u128 + c as u128) % p as u128) as u64);
            return smallvec::smallvec![v];
        }
        let (_, r) = fp::divrem(&xs, h, p);
        let mut out: Coeffs = r.into_iter().collect();
        out.resize(h.len() - 1, 0);
        out
    }

    pub fn elt(&self, coeffs: &[i128]) -> RingElt {
        let zm = self.0.zm;
        let d = self.degree();
        let mut c: Vec<u64> = coeffs.iter().map(|&v| zm.reduce_i128(v)).collect();
        if c.len() < d {
            c.resize(d, 0);
        }
        let c = reduce_poly_mod(zm, &c, &self.0.g);
        let mut out: Coeffs = c.into_iter().collect();
        self.normalize(&mut out);
        RingElt::from_raw(self.clone(), out)
    }

    pub fn from_int(&self, v: i128) -> RingElt {
        self.elt(&[v])
    }

    pub fn zero(&self) -> RingElt {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElt {
        self.from_int(1)
    }

    /// The class of the generator `x`.
    pub fn x(&self) -> RingElt {
        self.elt(&[0, 1])
    }

    /// Evaluates an integer polynomial at the class of `x`.
    pub fn from_poly(&self, f: &IntPoly) -> RingElt {
        self.elt(f.coeffs())
    }

    /// Parses an element written as a polynomial in `x`.
    pub fn parse_elt(&self, s: &str) -> Result<RingElt> {
        Ok(self.from_poly(&IntPoly::parse(s)?))
    }

    /// Builds an element from a canonical coefficient vector, rejecting
    /// vectors that are not canonical.
    pub fn elt_from_canonical(&self, coeffs: &[u64]) -> Result<RingElt> {
        if coeffs.len() != self.degree() {
            return Err(Error::Certificate(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        let mut c: Coeffs = coeffs.iter().copied().collect();
        if c.iter().any(|&v| v >= self.0.zm.modulus()) {
            return Err(Error::Certificate(format!("coefficients {coeffs:?} out of range")));
        }
        self.normalize(&mut c);
        if c.as_slice() != coeffs {
            return Err(Error::Certificate(format!("{coeffs:?} is not in canonical form")));
        }
        Ok(RingElt::from_raw(self.clone(), c))
    }

    /// All elements in canonical (lexicographic coefficient) order.
    pub fn elements(&self) -> impl Iterator<Item = RingElt> + '_ {
        let n = self.size().expect("ring too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    /// The element at position `idx` of the canonical order.
    pub fn element_at(&self, mut idx: u64) -> RingElt {
        let b = self.bounds();
        let mut c: Coeffs = smallvec::smallvec![0; b.len()];
        for i in (0..b.len()).rev() {
            c[i] = idx % b[i];
            idx /= b[i];
        }
        RingElt::from_raw(self.clone(), c)
    }

    /// Position of `x` in the canonical order.
    pub fn index_of(&self, x: &RingElt) -> u64 {
        debug_assert!(x.ring() == self);
        self.index_of_raw(x.coeffs())
    }

    pub(crate) fn index_of_raw(&self, c: &[u64]) -> u64 {
        c.iter().zip(self.bounds()).fold(0u64, |acc, (&v, &b)| acc * b + v)
    }
}

fn nilpotency(data: &RingData) -> u32 {
    let zm = data.zm;
    let g = &data.g;
    let m_rows: Vec<Vec<u64>> = data.max_ideal.rows().iter().map(|r| rev(r)).collect();
    let mut cur = data.max_ideal.clone();
    let mut l = 1;
    while cur != data.ideal {
        let mut prods = Vec::new();
        for r in cur.rows() {
            let r = rev(r);
            for s in &m_rows {
                prods.push(rev(&poly_mul_mod(zm, &r, s, g)));
            }
        }
        cur = Lattice::span(zm, g.len() - 1, prods).sum(&data.ideal);
        l += 1;
    }
    l
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, a) = (self.p(), self.exponent());
        if a == 1 {
            write!(f, "Z/{p}")?;
        } else {
            write!(f, "Z/{p}^{a}")?;
        }
        if !(self.degree() == 1 && self.0.g[0] == 0) {
            write!(f, "[x]/({})", self.modulus_poly())?;
        }
        let rels = self.relations();
        if !rels.is_empty() {
            let parts: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
            write!(f, "; J = {}", parts.join(", "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    /// Grammar: `Z/p^a`, `Z/N` (N a prime power) or `F_p`, optionally
    /// followed by `[x]/(g)` and then by `; J = e1, e2, ...`.
    fn from_str(s: &str) -> Result<RingSpec> {
        let bad = |m: &str| Error::Parse(format!("{m} in ring spec {s:?}"));
        let (main, rels) = match s.split_once(';') {
            Some((m, r)) => (m.trim(), Some(r.trim())),
            None => (s.trim(), None),
        };
        let (base, modulus) = match main.split_once('[') {
            Some((b, rest)) => {
                let rest = rest.trim();
                let rest = rest
                    .strip_prefix("x]")
                    .or_else(|| rest.strip_prefix("X]"))
                    .ok_or_else(|| bad("expected [x]"))?
                    .trim();
                let rest = rest.strip_prefix('/').ok_or_else(|| bad("expected /"))?.trim();
                let inner = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| bad("expected (g)"))?;
                (b.trim(), IntPoly::parse(inner)?)
            }
            None => (main, IntPoly::x()),
        };
        let (p, a) = if let Some(rest) = base.strip_prefix("F_") {
            (rest.trim().parse::<u64>().map_err(|_| bad("bad prime"))?, 1)
        } else {
            let rest = base.strip_prefix("Z/").ok_or_else(|| bad("expected Z/ or F_"))?;
            match rest.split_once('^') {
                Some((p, a)) => (
                    p.trim().parse::<u64>().map_err(|_| bad("bad prime"))?,
                    a.trim().parse::<u32>().map_err(|_| bad("bad exponent"))?,
                ),
                None => {
                    let n: u64 = rest.trim().parse().map_err(|_| bad("bad modulus"))?;
                    prime_power(n).ok_or_else(|| bad("modulus is not a prime power"))?
                }
            }
        };
        let extra = match rels {
            None => Vec::new(),
            Some(r) => {
                let r = r.strip_prefix('J').ok_or_else(|| bad("expected J ="))?.trim();
                let r = r.strip_prefix('=').ok_or_else(|| bad("expected J ="))?;
                r.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(IntPoly::parse)
                    .collect::<Result<Vec<_>>>()?
            }
        };
        RingSpec::new(p, a, &modulus, &extra)
    }
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut a = 0;
    while m.is_multiple_of(p) {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}
