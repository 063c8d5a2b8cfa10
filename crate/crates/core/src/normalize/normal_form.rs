//! Level-by-level conjugation of a lift into induced form.

use crate::defo::{diamond_check, extract_hom, rigidify, TransvectionTable};
use crate::error::{Error, Result};
use crate::localring::{lift_residue, quotient_by_m_power, Ideal, RingElt, RingHom, RingSpec};
use crate::matrix::Mat;

use super::defect::{defect_table, solve_conjugator, Strategy};
use super::family::{induced_lift, residue_in, torus_inclusion, GeneratorLift};

/// Largest target ring whose elements are tabulated for lifting.
pub const TARGET_LIMIT: u64 = 1 << 20;

/// Outcome of [`normalize_lift`].
#[derive(Clone, Debug)]
pub struct Normalization {
    /// Conjugators in the order applied; each lies in `I + M_n(m_S)`.
    pub chain: Vec<Mat>,
    /// The transvection table of the final lift.
    pub table: TransvectionTable,
    /// The inducing homomorphism `f: R -> S`.
    pub hom: RingHom,
}

impl Normalization {
    /// The product of the chain, `K_m ... K_1`.
    pub fn conjugator(&self, ring: &RingSpec, n: usize) -> Mat {
        self.chain
            .iter()
            .fold(Mat::identity(ring, n), |acc, k| k.mul(&acc))
    }
}

/// Whether normalization is available for `n` over a residue field with
/// `q` elements.
pub fn supported_case(n: usize, q: u64) -> bool {
    match n {
        0 | 1 => false,
        2 => !matches!(q, 2 | 3 | 5),
        3 => q != 2,
        _ => true,
    }
}

/// The quotients `S / m^j` for `j = 1 .. N` with `m^N = 0`, each obtained
/// from the next, and the projections from `S`.
struct Tower {
    ring: RingSpec,
    levels: Vec<(RingSpec, RingHom)>,
    /// Elements of `S` in canonical order, for least preimages.
    elements: Vec<RingElt>,
}

impl Tower {
    fn new(ring: &RingSpec) -> Result<Tower> {
        let size = ring
            .size()
            .filter(|&s| s <= TARGET_LIMIT)
            .ok_or_else(|| Error::PreconditionViolated(format!("{ring} is too large")))?;
        let top = ring.nilpotency_index() as usize;
        let mut levels = vec![(ring.clone(), RingHom::identity(ring))];
        for j in (1..top).rev() {
            let (above, psi) = levels.last().expect("nonempty");
            let (q, pi) = quotient_by_m_power(above, j as u32)?;
            let psi = psi.compose(&pi)?;
            levels.push((q, psi));
        }
        levels.reverse();
        debug_assert_eq!(levels.len(), top);
        Ok(Tower {
            ring: ring.clone(),
            levels,
            elements: ring.elements().take(size as usize).collect(),
        })
    }

    /// `S / m^j`.
    fn level(&self, j: usize) -> &(RingSpec, RingHom) {
        &self.levels[j - 1]
    }

    fn top(&self) -> usize {
        self.levels.len()
    }

    /// Entrywise least preimages in `S` of a matrix over `S / m^j`.
    fn lift_matrix(&self, j: usize, m: &Mat) -> Mat {
        let (q, psi) = self.level(j);
        let mut least: Vec<Option<&RingElt>> = vec![None; q.size().expect("finite") as usize];
        for x in &self.elements {
            let slot = &mut least[q.index_of(&psi.apply(x)) as usize];
            if slot.is_none() {
                *slot = Some(x);
            }
        }
        let n = m.n();
        let mut out = Mat::zeros(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let x = least[q.index_of(&m.get(i, k)) as usize].expect("projections are onto");
                out.set(i, k, x);
            }
        }
        out
    }
}

fn check_congruent(k: &Mat) -> Result<()> {
    if k.congruent_to_identity(&Ideal::maximal(k.ring())) {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("conjugator {k} is not congruent to I")))
    }
}

/// Finds a chain of conjugators in `I + M_n(m_S)` taking `lift` to the
/// lift induced by a ring homomorphism `f: R -> S`, and returns `f`.
pub fn normalize_lift(lift: &GeneratorLift) -> Result<Normalization> {
    let n = lift.n();
    let q = lift.target().residue_field_size();
    if !supported_case(n, q) {
        return Err(Error::UnsupportedCase(format!(
            "the natural representation of SL_{n} over F_{q} has no universal deformation ring of induced type"
        )));
    }
    let tower = Tower::new(lift.target())?;
    let mut current = lift.clone();
    let mut chain = Vec::new();
    if n == 2 {
        let x = rigidify_torus(&current)?;
        if !x.is_identity() {
            current = current.conjugate(&x)?;
            chain.push(x);
        }
        check_upper_shape(&current)?;
    } else {
        let strategy = Strategy::for_case(n, q)?;
        let (k1, _) = tower.level(1);
        let source = lift.source();
        let x_image = lift_residue(k1, &residue_in(&k1.residue_field(), &source.x()));
        let mut g = RingHom::new(source, k1, x_image)?;
        for l in 1..tower.top() {
            let (ring, psi) = tower.level(l + 1);
            let reduced = current.map_target(psi)?;
            let table = defect_table(&reduced, &g, l as u32)?;
            let x = solve_conjugator(&table, strategy)?;
            let k = Mat::identity(ring, n).add(&x);
            let lifted = tower.lift_matrix(l + 1, &k);
            if !lifted.is_identity() {
                current = current.conjugate(&lifted)?;
                chain.push(lifted);
            }
            let reduced = current.map_target(psi)?;
            let table = diamond_check(&reduced).map_err(|w| Error::ClaimViolated {
                claim: 7,
                witness: format!("after conjugation: {w:?}"),
            })?;
            let found = extract_hom(&table, ring)?;
            let d = tower.lift_matrix(l + 1, &found.conjugator);
            if !d.is_identity() {
                current = current.conjugate(&d)?;
                chain.push(d);
            }
            g = found.hom;
        }
    }
    let table = diamond_check(&current).map_err(|w| {
        Error::NotCongruentToInduced(format!("final lift is not in transvection form: {w:?}"))
    })?;
    let found = extract_hom(&table, lift.target())?;
    if !found.conjugator.is_identity() {
        current = current.conjugate(&found.conjugator)?;
        chain.push(found.conjugator);
    }
    let table = diamond_check(&current).expect("diagonal conjugation keeps transvection form");
    for k in &chain {
        check_congruent(k)?;
    }
    let result = Normalization {
        chain,
        table,
        hom: found.hom,
    };
    let expected = induced_lift(&result.hom, n)?;
    let total = result.conjugator(lift.target(), n);
    if lift.conjugate(&total)? != expected {
        return Err(Error::NotCongruentToInduced(
            "the conjugator chain does not reproduce the induced lift".into(),
        ));
    }
    Ok(result)
}

/// Conjugator making the torus images equal to the Teichmuller inclusion.
fn rigidify_torus(lift: &GeneratorLift) -> Result<Mat> {
    let torus = lift.torus().ok_or_else(|| {
        Error::PreconditionViolated("n = 2 needs the images of the Teichmuller torus".into())
    })?;
    let inclusion = torus_inclusion(lift.source(), lift.target())?;
    if inclusion.len() != torus.len() {
        return Err(Error::PreconditionViolated(format!(
            "expected {} torus images, got {}",
            inclusion.len(),
            torus.len()
        )));
    }
    let pairs: Vec<(Mat, Mat)> = inclusion
        .into_iter()
        .map(|(delta, incl)| {
            torus
                .iter()
                .find(|(d, _)| *d == delta)
                .map(|(_, rho)| (incl, rho.clone()))
                .ok_or_else(|| Error::PreconditionViolated(format!("no image for {delta}")))
        })
        .collect::<Result<_>>()?;
    rigidify(&pairs)
}

/// After rigidification: the torus acts by inclusion, a `delta` with
/// `alpha^4 != 1` exists, conjugation by it scales transvections by
/// `alpha^2`, and the images of `t_12^r`, `t_21^r` are unipotent triangular.
fn check_upper_shape(lift: &GeneratorLift) -> Result<()> {
    let torus = lift.torus().expect("checked by rigidify_torus");
    for (delta, want) in torus_inclusion(lift.source(), lift.target())? {
        let image = torus.iter().find(|(d, _)| *d == delta).map(|(_, m)| m);
        if image != Some(&want) {
            return Err(Error::NotCongruentToInduced(format!(
                "torus element {delta} is not fixed after rigidification"
            )));
        }
    }
    let source = lift.source();
    let (delta, image) = torus
        .iter()
        .find(|(d, _)| !d.get(0, 0).pow(4).is_one())
        .ok_or_else(|| Error::UnsupportedCase("no Teichmuller alpha with alpha^4 != 1".into()))?;
    let alpha2 = delta.get(0, 0).pow(2);
    let image_inv = image.inverse()?;
    let fail = |what: String| Err(Error::NotCongruentToInduced(what));
    for r in source.elements() {
        for (a, b) in [(0, 1), (1, 0)] {
            let scaled = if a == 0 { &alpha2 * &r } else { &r * &alpha2.inverse()? };
            let m = lift.image(a, b, &r);
            if image.mul(m).mul(&image_inv) != *lift.image(a, b, &scaled) {
                return fail(format!(
                    "conjugating the image of t_{}{}^({r}) by delta does not scale it",
                    a + 1,
                    b + 1
                ));
            }
            if !m.get(b, a).is_zero() {
                return fail(format!(
                    "image of t_{}{}^({r}) has nonzero entry ({}, {})",
                    a + 1,
                    b + 1,
                    b + 1,
                    a + 1
                ));
            }
            if !m.get(0, 0).is_one() || !m.get(1, 1).is_one() {
                return fail(format!(
                    "image of t_{}{}^({r}) has diagonal ({}, {})",
                    a + 1,
                    b + 1,
                    m.get(0, 0),
                    m.get(1, 1)
                ));
            }
        }
    }
    Ok(())
}
