//! Exhaustive lift search under a presentation and classification up to
//! strict equivalence.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Presentation, Word};
use crate::localring::RingSpec;
use crate::matrix::Mat;

use super::lift::{congruence_kernel, lift_matrix, matrices_over};
use super::Lift;

/// Upper bound on the number of candidate tuples.
pub const SEARCH_LIMIT: u128 = 100_000_000;

/// Upper bound on `|I + M_n(m_S)|` for classification.
pub const KERNEL_LIMIT: u128 = 1_000_000;

struct Search<'a> {
    fibers: Vec<Vec<Mat>>,
    inverses: Vec<Vec<Mat>>,
    /// Relators grouped by the largest generator they involve.
    by_depth: Vec<Vec<&'a (Word, Word)>>,
    identity: Mat,
}

impl Search<'_> {
    fn eval(&self, w: &Word, chosen: &[usize]) -> Mat {
        let mut acc = self.identity.clone();
        for &(g, e) in &w.0 {
            let m = if e > 0 {
                &self.fibers[g][chosen[g]]
            } else {
                &self.inverses[g][chosen[g]]
            };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(m);
            }
        }
        acc
    }

    fn holds(&self, depth: usize, chosen: &[usize]) -> bool {
        self.by_depth[depth]
            .iter()
            .all(|(l, r)| self.eval(l, chosen) == self.eval(r, chosen))
    }

    fn descend(&self, depth: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<Mat>>) {
        if depth == self.fibers.len() {
            out.push(
                chosen
                    .iter()
                    .enumerate()
                    .map(|(g, &i)| self.fibers[g][i].clone())
                    .collect(),
            );
            return;
        }
        for i in 0..self.fibers[depth].len() {
            chosen.push(i);
            if self.holds(depth, chosen) {
                self.descend(depth + 1, chosen, out);
            }
            chosen.pop();
        }
    }
}

/// Every tuple of matrices over `target` reducing to `base` and satisfying
/// all relators of `pres`, in canonical order. The search is split over
/// `shards` threads by the first generator's fiber; the output does not
/// depend on the shard count.
pub fn enumerate_lifts(
    pres: &Presentation,
    base: &[Mat],
    target: &RingSpec,
    shards: usize,
) -> Result<Vec<Lift>> {
    if base.len() != pres.generators.len() || base.is_empty() {
        return Err(Error::PreconditionViolated(
            "one base image per generator is required".into(),
        ));
    }
    if base[0].ring() != &target.residue_field() {
        return Err(Error::ResidueMismatch(format!(
            "{} is not the residue field of {}",
            base[0].ring(),
            target
        )));
    }
    let n = base[0].n();
    let max: Vec<_> = target.elements().filter(|x| x.in_max_ideal()).collect();
    let fiber = (max.len() as u128)
        .checked_pow((n * n) as u32)
        .unwrap_or(u128::MAX);
    let fibers_sizes = vec![fiber; base.len()];
    let total = fibers_sizes
        .iter()
        .try_fold(1u128, |acc, &f| acc.checked_mul(f))
        .unwrap_or(u128::MAX);
    if total > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge {
            fibers: fibers_sizes,
        });
    }
    let perturbations = matrices_over(&max, n);
    let mut fibers = Vec::new();
    let mut inverses = Vec::new();
    for b in base {
        let center = lift_matrix(target, b);
        let mut fib: Vec<Mat> = perturbations.iter().map(|e| center.add(e)).collect();
        fib.sort();
        inverses.push(fib.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?);
        fibers.push(fib);
    }
    let mut by_depth: Vec<Vec<&(Word, Word)>> = vec![Vec::new(); base.len()];
    for rel in &pres.relators {
        let support = rel.0.support() | rel.1.support();
        if support != 0 {
            by_depth[63 - support.leading_zeros() as usize].push(rel);
        }
    }
    let search = Search {
        fibers,
        inverses,
        by_depth,
        identity: Mat::identity(target, n),
    };

    let first = search.fibers[0].len();
    let shards = shards.clamp(1, first);
    let chunk = first.div_ceil(shards);
    let results: Vec<Vec<Vec<Mat>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|s| {
                let search = &search;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut chosen = Vec::with_capacity(base.len());
                    for i in s * chunk..((s + 1) * chunk).min(first) {
                        chosen.push(i);
                        if search.holds(0, &chosen) {
                            search.descend(1, &mut chosen, &mut out);
                        }
                        chosen.pop();
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search thread"))
            .collect()
    });
    // Shards cover consecutive ranges, so concatenation is already sorted.
    let tuples: Vec<Vec<Mat>> = results.into_iter().flatten().collect();
    debug_assert!(tuples.windows(2).all(|w| w[0] < w[1]));
    Ok(tuples
        .into_iter()
        .map(|images| Lift::from_parts_unchecked(base.to_vec(), images))
        .collect())
}

/// A strict equivalence class of lifts.
#[derive(Clone, Debug)]
pub struct DeformationClass {
    pub id: usize,
    /// Least member in canonical order.
    pub representative: Lift,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub id: usize,
    pub orbit_size: usize,
    pub representative: Vec<String>,
}

impl DeformationClass {
    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            id: self.id,
            orbit_size: self.orbit_size,
            representative: self
                .representative
                .images()
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

/// Orbits of `lifts` under simultaneous conjugation by `I + M_n(m_S)`.
///
/// Every orbit is computed in full, so the classes are correct even when
/// `lifts` is not closed under conjugation.
pub fn classify_strict(lifts: &[Lift]) -> Result<Vec<DeformationClass>> {
    let Some(first) = lifts.first() else {
        return Ok(Vec::new());
    };
    let target = first.target().clone();
    let n = first.degree();
    for l in lifts {
        if l.target() != &target || l.base() != first.base() {
            return Err(Error::PreconditionViolated(
                "lifts must share base and target".into(),
            ));
        }
    }
    let kernel = congruence_kernel(&target, n, KERNEL_LIMIT)?;
    let pairs: Vec<(Mat, Mat)> = kernel
        .into_iter()
        .map(|k| {
            let inv = k.inverse().expect("congruent to identity");
            (k, inv)
        })
        .collect();
    let mut sorted: Vec<&Lift> = lifts.iter().collect();
    sorted.sort();
    let mut seen: HashSet<Vec<Mat>> = HashSet::new();
    let mut classes = Vec::new();
    for lift in sorted {
        if seen.contains(lift.images()) {
            continue;
        }
        let mut orbit: HashSet<Vec<Mat>> = HashSet::new();
        for (k, kinv) in &pairs {
            orbit.insert(lift.images().iter().map(|m| k.mul(m).mul(kinv)).collect());
        }
        let rep = orbit.iter().min().expect("nonempty orbit").clone();
        classes.push(DeformationClass {
            id: 0,
            representative: Lift::from_parts_unchecked(first.base().to_vec(), rep),
            orbit_size: orbit.len(),
        });
        seen.extend(orbit);
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
    }
    Ok(classes)
}
