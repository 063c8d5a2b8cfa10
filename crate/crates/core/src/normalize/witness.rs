//! The lift of `SL_3(Z/4) -> SL_3(F_2)` through the characteristic-zero
//! representation of `SL_3(F_2)`, which no ring homomorphism induces.

use serde::Serialize;

use crate::defo::{diamond_check, exceptional_lift, strictly_equivalent, DiamondWitness};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, NamedGroup, DEFAULT_CAP};
use crate::localring::{find_homs, RingSpec};
use crate::matrix::{transvection, Mat};

use super::family::{induced_lift, residue_in, GeneratorLift};
use super::normal_form::normalize_lift;

/// The transvection family of `rho_0` composed with reduction mod 2, for
/// `SL_3(R)` with `R = Z/2^a` and `rho_0` truncated to `R`.
pub fn exceptional_family(source: &RingSpec) -> Result<GeneratorLift> {
    if source.p() != 2 || source.degree() != 1 {
        return Err(Error::PreconditionViolated(format!("{source} is not Z/2^a")));
    }
    let lift = exceptional_lift(NamedGroup::Sl3F2, source.exponent())?;
    let target = lift.target().clone();
    if &target != source {
        return Err(Error::PreconditionViolated(format!("{source} is not Z/2^a")));
    }
    let group = FiniteGroup::generate(lift.base(), DEFAULT_CAP)?;
    let images = lift.images();
    let k = group.ring().clone();
    GeneratorLift::new(
        source,
        &target,
        3,
        |a, b, r| {
            let reduced = transvection(3, a, b, &residue_in(&k, r))?;
            let g = group
                .position(&reduced)
                .ok_or_else(|| Error::PreconditionViolated(format!("{reduced} not generated")))?;
            Ok(group
                .word(g)
                .iter()
                .fold(Mat::identity(&target, 3), |acc, &i| acc.mul(&images[i])))
        },
        None,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedComparison {
    pub hom: String,
    pub t12_squared_is_identity: bool,
    pub strictly_equivalent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub ring: String,
    pub t12_squared_is_identity: bool,
    pub induced: Vec<InducedComparison>,
    pub homs_complete: bool,
    pub diamond_witness: Option<DiamondWitness>,
    pub normalize_unsupported: bool,
    pub passed: bool,
}

/// Over `R = S = Z/4`: the exceptional family kills `t_12^2` while every
/// induced family does not, and no conjugation matches them.
pub fn sl3f2_witness() -> Result<WitnessReport> {
    let ring = RingSpec::zmod(2, 2)?;
    let family = exceptional_family(&ring)?;
    let two = ring.from_int(2);
    let kills = family.image(0, 1, &two).is_identity();
    let homs = find_homs(&ring, &ring)?;
    let induced = homs
        .homs
        .iter()
        .map(|f| {
            let lift = induced_lift(f, 3)?;
            Ok(InducedComparison {
                hom: format!("x -> {}", f.x_image()),
                t12_squared_is_identity: lift.image(0, 1, &two).is_identity(),
                strictly_equivalent: strictly_equivalent(&family, &lift)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let diamond_witness = diamond_check(&family).err();
    let normalize_unsupported = matches!(normalize_lift(&family), Err(Error::UnsupportedCase(_)));
    let passed = kills
        && homs.complete
        && !induced.is_empty()
        && induced
            .iter()
            .all(|c| !c.t12_squared_is_identity && !c.strictly_equivalent)
        && diamond_witness.is_some()
        && normalize_unsupported;
    Ok(WitnessReport {
        ring: ring.to_string(),
        t12_squared_is_identity: kills,
        induced,
        homs_complete: homs.complete,
        diamond_witness,
        normalize_unsupported,
        passed,
    })
}
