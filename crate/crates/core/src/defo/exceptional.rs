//! Lifts to characteristic zero of the natural representations of
//! `SL_3(F_2)`, `SL_2(F_2)`, `SL_2(F_3)` and `SL_2(F_5)`, truncated at a
//! finite precision.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{NamedGroup, PresentationCheck};
use crate::localring::{hensel_lift, RingElt, RingSpec};
use crate::matrix::Mat;
use crate::poly::IntPoly;

use super::Lift;

fn root(ring: &RingSpec, poly: &[i128], seed: i128) -> Result<RingElt> {
    let f: Vec<RingElt> = poly.iter().map(|&c| ring.from_int(c)).collect();
    hensel_lift(&f, &ring.from_int(seed))
}

fn from_elts(ring: &RingSpec, rows: &[&[&RingElt]]) -> Result<Mat> {
    let rows: Vec<Vec<RingElt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.clone()).collect())
        .collect();
    Mat::from_rows(ring, &rows)
}

/// The lift at precision `precision`, generators in the order of the group's
/// builtin presentation.
pub fn exceptional_lift(which: NamedGroup, precision: u32) -> Result<Lift> {
    Lift::new(which.generators(), lifted_images(which, precision)?)
}

fn lifted_images(which: NamedGroup, precision: u32) -> Result<Vec<Mat>> {
    if precision < 2 {
        return Err(Error::PreconditionViolated("precision must be at least 2".into()));
    }
    let k = precision;
    let images = match which {
        NamedGroup::Sl3F2 => {
            let ring = RingSpec::zmod(2, k)?;
            // Root of x^2 + x + 2 congruent to 1 mod 2.
            let w = root(&ring, &[2, 1, 1], 1)?;
            let one = ring.one();
            let zero = ring.zero();
            let minus_one = -&one;
            let corner = &minus_one - &w;
            let a = from_elts(
                &ring,
                &[
                    &[&one, &w, &corner],
                    &[&zero, &minus_one, &zero],
                    &[&zero, &zero, &minus_one],
                ],
            )?;
            let b = Mat::from_ints(&ring, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
            // Sunday generators S = BA, T = A.
            vec![b.mul(&a), a]
        }
        NamedGroup::Sl2F2 => {
            let ring = RingSpec::zmod(2, k)?;
            let tau = Mat::from_ints(&ring, &[&[0, 1], &[-1, -1]]);
            let eps = Mat::from_ints(&ring, &[&[0, 1], &[1, 0]]);
            vec![tau, eps]
        }
        NamedGroup::Sl2F3 => {
            let ring = RingSpec::zmod(3, k)?;
            // t^2 = -2, t = 2 mod 3.
            let t = root(&ring, &[2, 0, 1], 2)?;
            let half = ring.from_int(2).inverse()?;
            let one = ring.one();
            let a = from_elts(&ring, &[&[&one, &(&t + &one)], &[&(&t - &one), &one]])?
                .scale(&half);
            let c = Mat::from_ints(&ring, &[&[0, 1], &[-1, 0]]);
            vec![a, c]
        }
        NamedGroup::Sl2F5 => {
            let ring = RingSpec::new(5, k, &IntPoly::new(vec![-5, 0, 1]), &[])?;
            // i^2 = -1, i = 2 mod 5, and phi = (1 + sqrt 5) / 2 with sqrt 5 = x.
            let i = root(&ring, &[1, 0, 1], 2)?;
            let half = ring.from_int(2).inverse()?;
            let one = ring.one();
            let phi = &(&one + &ring.x()) * &half;
            let ip = &i * &(&phi - &one);
            let a = from_elts(&ring, &[&[&phi, &(&ip + &one)], &[&(&ip - &one), &phi]])?
                .scale(&half);
            let c = Mat::from_ints(&ring, &[&[0, 1], &[-1, 0]]);
            vec![a, c]
        }
        NamedGroup::Gl2F3 => {
            return Err(Error::UnsupportedCase(
                "no exceptional lift is provided for GL_2(F_3)".into(),
            ))
        }
    };
    Ok(images)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    pub group: String,
    pub precision: u32,
    pub ring: String,
    pub relators: PresentationCheck,
    pub reduces_to_base: bool,
    pub passed: bool,
}

/// Builds the lift at the given precision and checks every relator of the
/// matching presentation together with the reduction to the base images.
pub fn verify_exceptional_lift(which: NamedGroup, precision: u32) -> Result<ExceptionalReport> {
    let images = lifted_images(which, precision)?;
    let (pres, base) = which
        .presentation()
        .expect("exceptional groups carry presentations")
        .build()?;
    let relators = pres.check(&images)?;
    let reduces_to_base = images.iter().zip(&base).all(|(m, b)| &m.residue() == b);
    Ok(ExceptionalReport {
        group: which.to_string(),
        precision,
        ring: images[0].ring().to_string(),
        passed: relators.holds && reduces_to_base,
        relators,
        reduces_to_base,
    })
}
