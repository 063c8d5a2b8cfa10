use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::zmod::{self, ZMod};

/// Generators, as a module over `Z/p^a`, of the matrices commuting with
/// every image.
pub fn commutant(images: &[Mat]) -> Result<Vec<Mat>> {
    let first = images
        .first()
        .ok_or_else(|| Error::PreconditionViolated("no images".into()))?;
    let ring = first.ring();
    let n = first.n();
    let d = ring.degree();
    let zm = ZMod::new(ring.p(), ring.exponent());
    let q = zm.modulus() as i128;
    let relations: Vec<Vec<u64>> = ring
        .relations()
        .iter()
        .map(|r| {
            (0..d)
                .map(|i| zm.reduce_i128(r.coeff(i).rem_euclid(q)))
                .collect()
        })
        .collect();

    let slots = n * n * images.len();
    let out_dim = slots * d;
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for c in 0..n * n {
        for k in 0..d {
            let mut e = Mat::zeros(ring, n);
            let mut coeffs = vec![0i128; d];
            coeffs[k] = 1;
            e.set(c / n, c % n, &ring.elt(&coeffs));
            let col: Vec<u64> = images
                .iter()
                .flat_map(|g| e.mul(g).sub(&g.mul(&e)).raw_data().to_vec())
                .collect();
            columns.push(col);
        }
    }
    // Slack columns absorbing the relations of the ring in each output slot.
    for s in 0..slots {
        for rel in &relations {
            let mut col = vec![0u64; out_dim];
            col[s * d..(s + 1) * d].copy_from_slice(rel);
            columns.push(col);
        }
    }
    let ker = zmod::kernel(zm, out_dim, &columns);
    Ok(ker
        .rows()
        .iter()
        .map(|row| {
            let mut m = Mat::zeros(ring, n);
            for c in 0..n * n {
                let coeffs: Vec<i128> = row[c * d..(c + 1) * d].iter().map(|&v| v as i128).collect();
                m.set(c / n, c % n, &ring.elt(&coeffs));
            }
            m
        })
        .filter(|m| !m.raw_data().iter().all(|&v| v == 0))
        .collect())
}

/// Whether the commutant of the images is exactly the scalar matrices.
pub fn has_scalar_commutant(images: &[Mat]) -> Result<bool> {
    Ok(commutant(images)?.iter().all(|m| m.as_scalar().is_some()))
}
