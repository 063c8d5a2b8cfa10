use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::teichmueller_torus;
use crate::localring::{teichmueller, RingElt, RingHom, RingSpec};
use crate::matrix::{transvection, Mat};

/// Ordered pairs `(a, b)` with `a != b`, lexicographically.
pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * (n - 1) + if b > a { b - 1 } else { b }
}

/// Images of every transvection `t_ab^r` (`a != b`, `r` in `R`) under a lift
/// of the natural representation of `SL_n(R)` to `GL_n(S)`, optionally with
/// images of the Teichmuller torus for `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorLift {
    source: RingSpec,
    target: RingSpec,
    n: usize,
    /// Indexed by `pair_index(a, b) * |R| + index_of(r)`.
    images: Vec<Mat>,
    /// Pairs `(delta, image of delta)` with `delta` in the torus over `R`,
    /// sorted by `delta`.
    torus: Option<Vec<(Mat, Mat)>>,
}

impl GeneratorLift {
    /// Builds the family from `image(a, b, r)` and checks that it reduces to
    /// the natural representation and satisfies the addition, commutator and
    /// commuting relations among transvections.
    pub fn new(
        source: &RingSpec,
        target: &RingSpec,
        n: usize,
        image: impl FnMut(usize, usize, &RingElt) -> Result<Mat>,
        torus: Option<Vec<(Mat, Mat)>>,
    ) -> Result<GeneratorLift> {
        let lift = GeneratorLift::new_unvalidated(source, target, n, image, torus)?;
        lift.check_residues()?;
        lift.check_relations()?;
        Ok(lift)
    }

    /// Like [`GeneratorLift::new`] but without any checks beyond shapes.
    /// Non-homomorphic input is then caught by the normalization claims.
    pub fn new_unvalidated(
        source: &RingSpec,
        target: &RingSpec,
        n: usize,
        mut image: impl FnMut(usize, usize, &RingElt) -> Result<Mat>,
        torus: Option<Vec<(Mat, Mat)>>,
    ) -> Result<GeneratorLift> {
        if n < 2 {
            return Err(Error::PreconditionViolated("n must be at least 2".into()));
        }
        if source.residue_field() != target.residue_field() {
            return Err(Error::ResidueMismatch(format!("{source} vs {target}")));
        }
        let size = source
            .size()
            .filter(|&s| s <= 1 << 16)
            .ok_or_else(|| Error::PreconditionViolated(format!("{source} is too large")))?;
        let mut images = Vec::with_capacity(n * (n - 1) * size as usize);
        for (a, b) in index_pairs(n) {
            for r in source.elements() {
                let m = image(a, b, &r)?;
                if m.ring() != target || m.n() != n {
                    return Err(Error::MixedRings);
                }
                images.push(m);
            }
        }
        let torus = torus.map(|mut t| {
            t.sort();
            t
        });
        Ok(GeneratorLift {
            source: source.clone(),
            target: target.clone(),
            n,
            images,
            torus,
        })
    }

    pub fn source(&self) -> &RingSpec {
        &self.source
    }

    pub fn target(&self) -> &RingSpec {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn torus(&self) -> Option<&[(Mat, Mat)]> {
        self.torus.as_deref()
    }

    fn slot(&self, a: usize, b: usize, r_index: u64) -> usize {
        pair_index(self.n, a, b) * self.source_size() + r_index as usize
    }

    pub fn source_size(&self) -> usize {
        self.images.len() / (self.n * (self.n - 1))
    }

    /// The image of `t_ab^r`.
    pub fn image(&self, a: usize, b: usize, r: &RingElt) -> &Mat {
        &self.images[self.slot(a, b, self.source.index_of(r))]
    }

    pub(crate) fn image_at(&self, a: usize, b: usize, r_index: u64) -> &Mat {
        &self.images[self.slot(a, b, r_index)]
    }

    /// Every `((a, b), r, image)` in storage order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), RingElt, &Mat)> + '_ {
        let size = self.source_size();
        let pairs = index_pairs(self.n);
        self.images.iter().enumerate().map(move |(i, m)| {
            let (a, b) = pairs[i / size];
            (
                (a, b),
                self.source.element_at((i % size) as u64),
                m,
            )
        })
    }

    /// Simultaneous conjugation `K rho K^{-1}`, torus images included.
    pub fn conjugate(&self, k: &Mat) -> Result<GeneratorLift> {
        let kinv = k.inverse()?;
        let conj = |m: &Mat| k.mul(m).mul(&kinv);
        Ok(GeneratorLift {
            source: self.source.clone(),
            target: self.target.clone(),
            n: self.n,
            images: self.images.iter().map(conj).collect(),
            torus: self
                .torus
                .as_ref()
                .map(|t| t.iter().map(|(d, m)| (d.clone(), conj(m))).collect()),
        })
    }

    /// The family pushed along a homomorphism of targets.
    pub fn map_target(&self, pi: &RingHom) -> Result<GeneratorLift> {
        if pi.source() != &self.target {
            return Err(Error::MixedRings);
        }
        Ok(GeneratorLift {
            source: self.source.clone(),
            target: pi.target().clone(),
            n: self.n,
            images: self.images.iter().map(|m| m.apply_hom(pi)).collect(),
            torus: self
                .torus
                .as_ref()
                .map(|t| t.iter().map(|(d, m)| (d.clone(), m.apply_hom(pi))).collect()),
        })
    }

    fn check_residues(&self) -> Result<()> {
        let k = self.target.residue_field();
        for ((a, b), r, m) in self.entries() {
            let expected = transvection(self.n, a, b, &residue_in(&k, &r))?;
            if m.residue() != expected {
                return Err(Error::PreconditionViolated(format!(
                    "image of t_{}{}^({r}) does not reduce to the natural image",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(())
    }

    /// Checks `t_ab^r t_ab^s = t_ab^(r+s)`, `[t_ab^r, t_bc^s] = t_ac^(rs)` and
    /// `[t_ab^r, t_cd^s] = 1` for `{a, c}` and `{b, d}` disjoint.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.n;
        let size = self.source_size() as u64;
        let elts: Vec<RingElt> = self.source.elements().collect();
        let inverses: Vec<Mat> = self.images.iter().map(Mat::inverse).collect::<Result<_>>()?;
        let inv = |a: usize, b: usize, i: u64| &inverses[self.slot(a, b, i)];
        let fail = |rel: u8, what: String| {
            Err(Error::PreconditionViolated(format!(
                "relation ({rel}) fails for {what}"
            )))
        };
        // The monomials generate R additively. Given additivity, (3) and
        // then (2) are biadditive, so generator pairs suffice for both.
        let gens: Vec<u64> = (0..self.source.degree())
            .map(|k| self.source.index_of(&self.source.x().pow(k as u128)))
            .collect();
        for (a, b) in index_pairs(n) {
            if !self.image_at(a, b, self.source.index_of(&self.source.zero())).is_identity() {
                return fail(1, format!("t_{}{} at 0", a + 1, b + 1));
            }
            for i in 0..size {
                for &j in &gens {
                    let sum = self.source.index_of(&(&elts[i as usize] + &elts[j as usize]));
                    if self.image_at(a, b, i).mul(self.image_at(a, b, j)) != *self.image_at(a, b, sum) {
                        return fail(1, format!("t_{}{} at indices {i}, {j}", a + 1, b + 1));
                    }
                }
            }
        }
        for (a, b) in index_pairs(n) {
            for (c, d) in index_pairs(n) {
                if a == d || b == c || (a, b) == (c, d) {
                    continue;
                }
                for &i in &gens {
                    for &j in &gens {
                        let x = self.image_at(a, b, i);
                        let y = self.image_at(c, d, j);
                        if x.mul(y) != y.mul(x) {
                            return fail(
                                3,
                                format!("t_{}{} and t_{}{}", a + 1, b + 1, c + 1, d + 1),
                            );
                        }
                    }
                }
            }
        }
        for (a, b) in index_pairs(n) {
            for c in (0..n).filter(|&c| c != a && c != b) {
                for &i in &gens {
                    for &j in &gens {
                        let prod = self.source.index_of(&(&elts[i as usize] * &elts[j as usize]));
                        let comm = self
                            .image_at(a, b, i)
                            .mul(self.image_at(b, c, j))
                            .mul(inv(a, b, i))
                            .mul(inv(b, c, j));
                        if comm != *self.image_at(a, c, prod) {
                            return fail(2, format!("(a, b, c) = ({}, {}, {})", a + 1, b + 1, c + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The residue of an element of `R` viewed in the (shared) residue field `k`.
pub(crate) fn residue_in(k: &RingSpec, r: &RingElt) -> RingElt {
    let res = r.residue();
    k.elt(&res.coeffs().iter().map(|&v| v as i128).collect::<Vec<_>>())
}

/// Pairs `(delta, incl(delta))` for the Teichmuller torus of `SL_2(R)`,
/// with `incl` the Teichmuller embedding into `SL_2(S)`.
pub fn torus_inclusion(source: &RingSpec, target: &RingSpec) -> Result<Vec<(Mat, Mat)>> {
    let k = target.residue_field();
    let d = teichmueller_torus(source)?;
    d.elements()
        .iter()
        .map(|delta| {
            let a = residue_in(&k, &delta.get(0, 0));
            let t = teichmueller(target, &a)?;
            Ok((delta.clone(), Mat::diagonal(&[t.clone(), t.inverse()?])))
        })
        .collect()
}

/// The lift `t_ab^r -> t_ab^(f(r))` induced by `f: R -> S`; for `n = 2` it
/// carries the torus images as well.
pub fn induced_lift(f: &RingHom, n: usize) -> Result<GeneratorLift> {
    let torus = if n == 2 {
        Some(
            torus_inclusion(f.source(), f.target())?
                .into_iter()
                .map(|(d, _)| {
                    let img = d.apply_hom(f);
                    (d, img)
                })
                .collect(),
        )
    } else {
        None
    };
    GeneratorLift::new_unvalidated(
        f.source(),
        f.target(),
        n,
        |a, b, r| transvection(n, a, b, &f.apply(r)),
        torus,
    )
}

/// A pseudorandom element of `I + M_n(m_S)`.
pub fn random_congruence_matrix(ring: &RingSpec, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let max: Vec<RingElt> = ring.elements().filter(|x| x.in_max_ideal()).collect();
    let mut k = Mat::identity(ring, n);
    for i in 0..n {
        for j in 0..n {
            let e = &max[rng.gen_range(0..max.len())];
            k.set(i, j, &(&k.get(i, j) + e));
        }
    }
    k
}

/// Seeded generator used by the round-trip suites.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
