//! Averaging over subgroups of order prime to `p`, and splitting a lift into
//! an induced part and a scalar character.

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::localring::{Ideal, RingElt};
use crate::matrix::Mat;

use super::cohomology::adjoint_invariants;

/// Given pairs `(incl(h), rho(h))` over `S` for every `h` in a subgroup `H`
/// of order prime to `p`, returns `X = |H|^{-1} sum incl(h) rho(h)^{-1}`,
/// which satisfies `X rho(h) X^{-1} = incl(h)` and `X = I mod m_S`.
pub fn rigidify(pairs: &[(Mat, Mat)]) -> Result<Mat> {
    let (first, _) = pairs
        .first()
        .ok_or_else(|| Error::PreconditionViolated("empty subgroup".into()))?;
    let ring = first.ring();
    let n = first.n();
    let order = ring.from_int(pairs.len() as i128);
    if !order.is_unit() {
        return Err(Error::OrderNotCoprime {
            order: pairs.len(),
            p: ring.p(),
        });
    }
    let mut sum = Mat::zeros(ring, n);
    for (incl, rho) in pairs {
        if incl.ring() != ring || rho.ring() != ring {
            return Err(Error::MixedRings);
        }
        sum = sum.add(&incl.mul(&rho.inverse()?));
    }
    let x = sum.scale(&order.inverse()?);
    if !x.congruent_to_identity(&Ideal::maximal(ring)) {
        return Err(Error::PreconditionViolated(
            "averaged conjugator is not congruent to I; rho does not reduce to the inclusion".into(),
        ));
    }
    let xinv = x.inverse()?;
    for (incl, rho) in pairs {
        if x.mul(rho).mul(&xinv) != *incl {
            return Err(Error::PreconditionViolated(format!(
                "conjugated image of {incl} differs; the pairs are not a homomorphism"
            )));
        }
    }
    Ok(x)
}

/// For lifts `rho`, `rho_f` of the same representation, given on every
/// element of `group` in its order, agreeing on `normal` and with
/// `Ad^normal = k I`, returns `lambda` with `rho(g) = lambda(g) rho_f(g)`.
pub fn twist_decompose(
    group: &FiniteGroup,
    rho: &[Mat],
    rho_f: &[Mat],
    normal: &FiniteGroup,
) -> Result<Vec<RingElt>> {
    if rho.len() != group.order() || rho_f.len() != group.order() {
        return Err(Error::PreconditionViolated(
            "one image per group element is required".into(),
        ));
    }
    let invariants = adjoint_invariants(&normal.generator_matrices())?;
    if invariants.len() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "invariants of the normal subgroup have dimension {}",
            invariants.len()
        )));
    }
    let ring = rho[0].ring();
    let normal_positions: Vec<usize> = normal
        .elements()
        .iter()
        .map(|h| {
            group
                .position(h)
                .ok_or_else(|| Error::PreconditionViolated(format!("{h} is not in the group")))
        })
        .collect::<Result<_>>()?;
    for &i in &normal_positions {
        if rho[i] != rho_f[i] {
            return Err(Error::PreconditionViolated(format!(
                "lifts differ on {} in the normal subgroup",
                group.element(i)
            )));
        }
    }
    let lambda: Vec<RingElt> = (0..group.order())
        .map(|i| {
            rho_f[i]
                .inverse()?
                .mul(&rho[i])
                .as_scalar()
                .ok_or_else(|| Error::NonScalarRatio(group.element(i).to_string()))
        })
        .collect::<Result<_>>()?;
    let fail = |what: String| Err(Error::PreconditionViolated(what));
    for (i, l) in lambda.iter().enumerate() {
        if !(l - &ring.one()).in_max_ideal() {
            return fail(format!("lambda({}) = {l} is not in 1 + m", group.element(i)));
        }
    }
    for &i in &normal_positions {
        if !lambda[i].is_one() {
            return fail(format!("lambda is nontrivial on {}", group.element(i)));
        }
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            if lambda[group.mul(g, h)] != &lambda[g] * &lambda[h] {
                return fail(format!(
                    "lambda is not multiplicative at ({}, {})",
                    group.element(g),
                    group.element(h)
                ));
            }
        }
    }
    Ok(lambda)
}
