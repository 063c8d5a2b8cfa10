use std::fmt;

use crate::zmod::{express, Lattice};

use super::{RingElt, RingSpec};

/// An ideal of a [`RingSpec`], kept both as generators and as the
/// canonical lattice of its elements (which always contains `J`).
#[derive(Clone)]
pub struct Ideal {
    ring: RingSpec,
    gens: Vec<RingElt>,
    lattice: Lattice,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.lattice == other.lattice
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.gens)
    }
}

impl Ideal {
    pub fn generated_by(ring: &RingSpec, gens: Vec<RingElt>) -> Ideal {
        let raw: Vec<Vec<u64>> = gens.iter().map(|g| g.coeffs().to_vec()).collect();
        let lattice = ring.ideal_lattice_of(&raw);
        Ideal {
            ring: ring.clone(),
            gens,
            lattice,
        }
    }

    pub fn zero(ring: &RingSpec) -> Ideal {
        Ideal::generated_by(ring, Vec::new())
    }

    pub fn unit(ring: &RingSpec) -> Ideal {
        Ideal::generated_by(ring, vec![ring.one()])
    }

    /// The maximal ideal `(p, h(x))`.
    pub fn maximal(ring: &RingSpec) -> Ideal {
        let mut gens = Vec::new();
        if !ring.is_field() {
            let p = ring.from_int(ring.p() as i128);
            if !p.is_zero() {
                gens.push(p);
            }
            let h = ring.from_poly(&crate::poly::IntPoly::new(
                ring.0.h.iter().map(|&c| c as i128).collect(),
            ));
            if !h.is_zero() {
                gens.push(h);
            }
        }
        let mut ideal = Ideal::generated_by(ring, gens);
        ideal.lattice = ring.max_ideal_lattice().clone();
        ideal
    }

    /// `m^l`; `m^0` is the unit ideal.
    pub fn max_power(ring: &RingSpec, l: u32) -> Ideal {
        let m = Ideal::maximal(ring);
        (0..l).fold(Ideal::unit(ring), |acc, _| acc.product(&m))
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElt] {
        &self.gens
    }

    pub(crate) fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, x: &RingElt) -> bool {
        self.lattice.contains(&self.ring.to_lattice_coords(x.coeffs()))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        self.lattice.contains_lattice(&other.lattice)
    }

    pub fn is_zero(&self) -> bool {
        self.lattice == *self.ring.relation_lattice()
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.one())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// `log_p` of the number of elements.
    pub fn size_log_p(&self) -> u32 {
        self.lattice.log_size() - self.ring.relation_lattice().log_size()
    }

    /// Additive generators: `x^i g` for each ideal generator `g`.
    pub fn module_generators(&self) -> Vec<RingElt> {
        let x = self.ring.x();
        let mut out = Vec::new();
        for g in &self.gens {
            let mut cur = g.clone();
            for _ in 0..self.ring.degree() {
                out.push(cur.clone());
                cur = &cur * &x;
            }
        }
        out
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let ab = a * b;
                if !ab.is_zero() && !gens.contains(&ab) {
                    gens.push(ab);
                }
            }
        }
        Ideal::generated_by(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ideal::generated_by(&self.ring, gens)
    }

    /// Writes `x` as `sum_k r_k s_k` with every `r_k` in `self` and every
    /// `s_k` in `other`, or `None` if `x` is not in the product ideal.
    pub fn factor_in_product(&self, other: &Ideal, x: &RingElt) -> Option<Vec<(RingElt, RingElt)>> {
        let ring = &self.ring;
        let rs: Vec<RingElt> = self.module_generators();
        let mut pairs: Vec<(RingElt, RingElt)> = Vec::new();
        for r in &rs {
            for s in &other.gens {
                pairs.push((r.clone(), s.clone()));
            }
        }
        let mut vecs: Vec<Vec<u64>> = pairs
            .iter()
            .map(|(r, s)| ring.to_lattice_coords((r * s).coeffs()))
            .collect();
        // Relations contribute zero in the ring.
        vecs.extend(ring.relation_lattice().rows().iter().cloned());
        let target = ring.to_lattice_coords(x.coeffs());
        let coeffs = express(ring.zm(), &vecs, &target)?;
        let out: Vec<(RingElt, RingElt)> = pairs
            .into_iter()
            .zip(coeffs)
            .filter(|&(_, c)| c != 0)
            .map(|((r, s), c)| (r.scale(c as i128), s))
            .filter(|(r, s)| !(r * s).is_zero())
            .collect();
        debug_assert_eq!(
            out.iter().fold(ring.zero(), |acc, (r, s)| &acc + &(r * s)),
            *x
        );
        Some(out)
    }

    /// Canonical representatives of the elements of the ideal, in the
    /// canonical element order.
    pub fn elements(&self) -> Vec<RingElt> {
        let mut out: Vec<RingElt> = self
            .ring
            .elements()
            .filter(|e| self.contains(e))
            .collect();
        out.sort();
        out
    }

    /// Canonical representative of `x` modulo this ideal.
    pub fn reduce(&self, x: &RingElt) -> RingElt {
        let mut v = self.ring.to_lattice_coords(x.coeffs());
        self.lattice.reduce(&mut v);
        RingElt::from_raw(self.ring.clone(), self.ring.from_lattice_coords(&v))
    }
}
