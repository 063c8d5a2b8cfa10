use std::fmt;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

use super::{Ideal, RingElt, RingSpec};

/// Exhaustive search bound for [`find_homs`].
pub const EXHAUSTIVE_HOM_LIMIT: u64 = 1_000_000;

/// A local ring homomorphism `R -> S`, determined by the image of `x`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingHom {
    source: RingSpec,
    target: RingSpec,
    x_image: RingElt,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {}, x -> {})", self.source, self.target, self.x_image)
    }
}

/// Whether the structure map `Z -> S` factors through `Z/p^a`.
fn structure_map_exists(source: &RingSpec, target: &RingSpec) -> bool {
    source.p() == target.p() && target.exponent() <= source.exponent()
}

impl RingHom {
    /// Validates that `x -> x_image` defines a local homomorphism.
    pub fn new(source: &RingSpec, target: &RingSpec, x_image: RingElt) -> Result<RingHom> {
        let fail = |axiom: &str, witness: String| Error::NotAHomomorphism {
            axiom: axiom.into(),
            witness,
        };
        if x_image.ring() != target {
            return Err(Error::MixedRings);
        }
        if source.residue_field() != target.residue_field() {
            return Err(Error::ResidueMismatch(format!("{source} vs {target}")));
        }
        if !structure_map_exists(source, target) {
            return Err(fail(
                "characteristic",
                format!("p^{} is nonzero in {target}", source.exponent()),
            ));
        }
        let hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            x_image,
        };
        let g_img = hom.apply_poly(&source.modulus_poly());
        if !g_img.is_zero() {
            return Err(fail("modulus", format!("g(x) maps to {g_img}")));
        }
        for r in source.relations() {
            let img = hom.apply_poly(&r);
            if !img.is_zero() {
                return Err(fail("relations", format!("{r} maps to {img}")));
            }
        }
        if hom.x_image.residue() != source.x().residue() {
            return Err(fail(
                "residue",
                format!("x maps to {} with residue {}", hom.x_image, hom.x_image.residue()),
            ));
        }
        Ok(hom)
    }

    pub fn identity(ring: &RingSpec) -> RingHom {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            x_image: ring.x(),
        }
    }

    pub fn source(&self) -> &RingSpec {
        &self.source
    }

    pub fn target(&self) -> &RingSpec {
        &self.target
    }

    pub fn x_image(&self) -> &RingElt {
        &self.x_image
    }

    fn apply_poly(&self, f: &IntPoly) -> RingElt {
        let t = &self.target;
        f.coeffs()
            .iter()
            .rev()
            .fold(t.zero(), |acc, &c| &(&acc * &self.x_image) + &t.from_int(c))
    }

    pub fn apply(&self, r: &RingElt) -> RingElt {
        debug_assert!(r.ring() == &self.source);
        let t = &self.target;
        r.coeffs()
            .iter()
            .rev()
            .fold(t.zero(), |acc, &c| &(&acc * &self.x_image) + &t.from_int(c as i128))
    }

    pub fn compose(&self, then: &RingHom) -> Result<RingHom> {
        if self.target != then.source {
            return Err(Error::MixedRings);
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: then.target.clone(),
            x_image: then.apply(&self.x_image),
        })
    }

    /// Injective iff the kernel is zero; checked on all elements.
    pub fn is_injective(&self) -> bool {
        self.target.size_log_p() >= self.source.size_log_p()
            && self
                .source
                .elements()
                .all(|r| r.is_zero() || !self.apply(&r).is_zero())
    }
}

/// Newton iteration `y <- y - f(y)/f'(y)` from `seed`, which must satisfy
/// `f(seed) in m` with `f'(seed)` a unit.
pub fn hensel_lift(f: &[RingElt], seed: &RingElt) -> Result<RingElt> {
    let ring = seed.ring();
    let df: Vec<RingElt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(i as i128))
        .collect();
    let d0 = RingElt::eval_poly(&df, seed);
    if !d0.is_unit() {
        return Err(Error::NonUnitDerivative);
    }
    if RingElt::eval_poly(f, seed).is_unit() {
        return Err(Error::PreconditionViolated(format!(
            "seed {seed} is not a root modulo the maximal ideal"
        )));
    }
    let mut y = seed.clone();
    for _ in 0..=2 * ring.nilpotency_index() + 2 {
        let fy = RingElt::eval_poly(f, &y);
        if fy.is_zero() {
            return Ok(y);
        }
        let dy = RingElt::eval_poly(&df, &y).inverse()?;
        y = &y - &(&fy * &dy);
    }
    Err(Error::NoConvergence)
}

/// The Teichmuller lift of the residue `c`: the unique root of
/// `y^{#k} = y` in `ring` reducing to `c`.
pub fn teichmueller(ring: &RingSpec, c: &RingElt) -> Result<RingElt> {
    let k = ring.residue_field();
    if c.ring() != &k {
        return Err(Error::MixedRings);
    }
    let kq = ring.residue_field_size() as u128;
    let mut y = lift_residue(ring, c);
    for _ in 0..=ring.nilpotency_index() + 1 {
        let next = y.pow(kq);
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    Err(Error::NoConvergence)
}

/// Some element of `ring` with residue `c` (a canonical polynomial lift).
pub fn lift_residue(ring: &RingSpec, c: &RingElt) -> RingElt {
    if ring.is_field() {
        return ring.elt(&c.coeffs().iter().map(|&v| v as i128).collect::<Vec<_>>());
    }
    if ring.residue_degree() == 1 {
        // In rings with residue field F_p, an integer lifts its class.
        return ring.from_int(c.coeffs()[0] as i128);
    }
    // Residue field F_p[x]/(h): x reduces to the class of x.
    ring.elt(&c.coeffs().iter().map(|&v| v as i128).collect::<Vec<_>>())
}

/// `R/m^l` together with the quotient map.
pub fn quotient_by_m_power(ring: &RingSpec, l: u32) -> Result<(RingSpec, RingHom)> {
    if l == 0 {
        return Err(Error::PreconditionViolated("l must be at least 1".into()));
    }
    let ml = Ideal::max_power(ring, l);
    let mut extra: Vec<Vec<u64>> = ring
        .relation_lattice()
        .rows()
        .iter()
        .map(|r| r.iter().rev().copied().collect())
        .collect();
    extra.extend(ml.lattice().rows().iter().map(|r| r.iter().rev().copied().collect()));
    let canon = RingSpec::build(
        ring.p(),
        ring.exponent(),
        ring.0.g.clone(),
        extra,
        (ring.0.h.clone(), ring.0.e),
    )?;
    let target = canon.ring;
    let x_image = target.elt_from_canonical(&canon.x_image)?;
    let hom = RingHom {
        source: ring.clone(),
        target,
        x_image,
    };
    Ok((hom.target.clone(), hom))
}

/// Outcome of [`find_homs`].
#[derive(Clone, Debug)]
pub struct HomSearch {
    pub homs: Vec<RingHom>,
    /// False when the search was neither exhaustive nor covered by a unique
    /// Hensel lift.
    pub complete: bool,
}

/// All local homomorphisms `R -> S`, sorted by the canonical order of the
/// image of `x`.
pub fn find_homs(source: &RingSpec, target: &RingSpec) -> Result<HomSearch> {
    if source.residue_field() != target.residue_field() {
        return Err(Error::ResidueMismatch(format!("{source} vs {target}")));
    }
    if !structure_map_exists(source, target) {
        return Ok(HomSearch {
            homs: Vec::new(),
            complete: true,
        });
    }
    let want = source.x().residue();
    let try_image = |s: RingElt| RingHom::new(source, target, s).ok();
    if target.size().is_some_and(|n| n <= EXHAUSTIVE_HOM_LIMIT) {
        let homs = target
            .elements()
            .filter(|s| s.residue() == want)
            .filter_map(try_image)
            .collect();
        return Ok(HomSearch {
            homs,
            complete: true,
        });
    }
    let g: Vec<RingElt> = source
        .modulus_poly()
        .coeffs()
        .iter()
        .map(|&c| target.from_int(c))
        .collect();
    let seed = lift_residue(target, &want);
    match hensel_lift(&g, &seed) {
        Ok(root) => {
            // A simple root: the lift is unique, so the search is complete.
            let homs = try_image(root).into_iter().collect();
            Ok(HomSearch {
                homs,
                complete: true,
            })
        }
        Err(_) => Ok(HomSearch {
            homs: Vec::new(),
            complete: false,
        }),
    }
}
