use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::localring::{lift_residue, RingSpec};
use crate::matrix::Mat;

/// Generator images over a finite local ring reducing to given base images
/// over its residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lift {
    base: Vec<Mat>,
    images: Vec<Mat>,
}

impl Lift {
    /// Checks that every image reduces to the matching base image.
    pub fn new(base: Vec<Mat>, images: Vec<Mat>) -> Result<Lift> {
        if base.len() != images.len() || images.is_empty() {
            return Err(Error::PreconditionViolated(format!(
                "{} base images but {} lifted images",
                base.len(),
                images.len()
            )));
        }
        let target = images[0].ring().clone();
        if base[0].ring() != &target.residue_field() {
            return Err(Error::ResidueMismatch(format!(
                "base ring {} is not the residue field of {}",
                base[0].ring(),
                target
            )));
        }
        for (i, (b, m)) in base.iter().zip(&images).enumerate() {
            if m.ring() != &target || b.ring() != base[0].ring() {
                return Err(Error::MixedRings);
            }
            if &m.residue() != b {
                return Err(Error::PreconditionViolated(format!(
                    "image {i} does not reduce to its base image"
                )));
            }
        }
        Ok(Lift { base, images })
    }

    pub(crate) fn from_parts_unchecked(base: Vec<Mat>, images: Vec<Mat>) -> Lift {
        Lift { base, images }
    }

    pub fn base(&self) -> &[Mat] {
        &self.base
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Mat> {
        self.images
    }

    pub fn target(&self) -> &RingSpec {
        self.images[0].ring()
    }

    pub fn degree(&self) -> usize {
        self.images[0].n()
    }

    /// `K rho K^{-1}` on every generator.
    pub fn conjugate(&self, k: &Mat) -> Result<Lift> {
        let kinv = k.inverse()?;
        Ok(Lift {
            base: self.base.clone(),
            images: self.images.iter().map(|m| k.mul(m).mul(&kinv)).collect(),
        })
    }

    /// Images of every element of `group`, whose generators must be the
    /// base images in order, obtained by multiplying along the group's words.
    pub fn on_group(&self, group: &FiniteGroup) -> Result<Vec<Mat>> {
        if group.generator_matrices() != self.base {
            return Err(Error::PreconditionViolated(
                "group generators differ from the base images".into(),
            ));
        }
        let id = Mat::identity(self.target(), self.degree());
        Ok((0..group.order())
            .map(|g| {
                group
                    .word(g)
                    .iter()
                    .fold(id.clone(), |acc, &i| acc.mul(&self.images[i]))
            })
            .collect())
    }
}

/// Entrywise canonical lift of a matrix over the residue field of `ring`.
pub fn lift_matrix(ring: &RingSpec, m: &Mat) -> Mat {
    let mut out = Mat::zeros(ring, m.n());
    for i in 0..m.n() {
        for j in 0..m.n() {
            out.set(i, j, &lift_residue(ring, &m.get(i, j)));
        }
    }
    out
}

/// All of `I + M_n(m_S)` in canonical order, or `KernelTooLarge`.
pub fn congruence_kernel(ring: &RingSpec, n: usize, limit: u128) -> Result<Vec<Mat>> {
    let max: Vec<_> = ring.elements().filter(|x| x.in_max_ideal()).collect();
    let size = (max.len() as u128)
        .checked_pow((n * n) as u32)
        .unwrap_or(u128::MAX);
    if size > limit {
        return Err(Error::KernelTooLarge(size));
    }
    let id = Mat::identity(ring, n);
    Ok(matrices_over(&max, n)
        .into_iter()
        .map(|e| id.add(&e))
        .collect())
}

/// Every `n x n` matrix with entries drawn from `entries`, in canonical
/// order when `entries` is sorted.
pub(crate) fn matrices_over(entries: &[crate::localring::RingElt], n: usize) -> Vec<Mat> {
    let ring = entries[0].ring();
    let cells = n * n;
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let mut m = Mat::zeros(ring, n);
        for (c, &i) in idx.iter().enumerate() {
            m.set(c / n, c % n, &entries[i]);
        }
        out.push(m);
        let mut c = cells;
        loop {
            if c == 0 {
                out.sort();
                return out;
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < entries.len() {
                break;
            }
            idx[c] = 0;
        }
    }
}
