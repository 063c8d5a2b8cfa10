//! Adjoint invariants and first cohomology with coefficients in the
//! adjoint representation over a prime field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::matrix::Mat;
use crate::zmod::{self, ZMod};

fn prime_field(images: &[Mat]) -> Result<ZMod> {
    let ring = images
        .first()
        .ok_or_else(|| Error::PreconditionViolated("no generator images".into()))?
        .ring();
    if !ring.is_field() || ring.degree() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "cohomology is computed over prime fields only, not {ring}"
        )));
    }
    Ok(ZMod::new(ring.p(), 1))
}

fn flat(m: &Mat) -> Vec<u64> {
    m.raw_data().to_vec()
}

/// Dense `n^2 x n^2` matrix of `X -> g X g^{-1}` acting on row-major vectors.
fn adjoint_action(g: &Mat) -> Result<Vec<Vec<u64>>> {
    let n = g.n();
    let ginv = g.inverse()?;
    let ring = g.ring();
    let mut cols = Vec::with_capacity(n * n);
    for c in 0..n * n {
        let mut e = Mat::zeros(ring, n);
        e.set(c / n, c % n, &ring.one());
        cols.push(flat(&g.mul(&e).mul(&ginv)));
    }
    // Transpose columns into rows.
    Ok((0..n * n)
        .map(|r| cols.iter().map(|col| col[r]).collect())
        .collect())
}

fn apply(zm: ZMod, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| zm.add(acc, zm.mul(x, y)))
        })
        .collect()
}

/// A basis of `{X : g X = X g for every generator g}` over the prime field.
pub fn adjoint_invariants(generators: &[Mat]) -> Result<Vec<Mat>> {
    let zm = prime_field(generators)?;
    let ring = generators[0].ring();
    let n = generators[0].n();
    let images: Vec<Vec<u64>> = (0..n * n)
        .map(|c| {
            let mut e = Mat::zeros(ring, n);
            e.set(c / n, c % n, &ring.one());
            generators
                .iter()
                .flat_map(|g| flat(&g.mul(&e).sub(&e.mul(g))))
                .collect()
        })
        .collect();
    let ker = zmod::kernel(zm, n * n * generators.len(), &images);
    Ok(ker
        .rows()
        .iter()
        .map(|row| {
            let mut m = Mat::zeros(ring, n);
            for (c, &v) in row.iter().enumerate() {
                m.set(c / n, c % n, &ring.from_int(v as i128));
            }
            m
        })
        .collect())
}

/// Dimensions of 1-cocycles, 1-coboundaries and first cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Report {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    pub adjoint_invariants: usize,
}

/// Linear description of all cocycles: each group element's value as an
/// `n^2 x (gens * n^2)` matrix in the unknown generator values.
struct CocycleSystem {
    zm: ZMod,
    n2: usize,
    unknowns: usize,
    values: Vec<Vec<Vec<u64>>>,
    constraints: Vec<Vec<u64>>,
}

fn cocycle_system(group: &FiniteGroup) -> Result<CocycleSystem> {
    let gens = group.generator_matrices();
    let zm = prime_field(&gens)?;
    let n = group.degree();
    let n2 = n * n;
    let unknowns = gens.len() * n2;
    let ad: Vec<Vec<Vec<u64>>> = group
        .elements()
        .iter()
        .map(adjoint_action)
        .collect::<Result<_>>()?;
    let mut values: Vec<Option<Vec<Vec<u64>>>> = vec![None; group.order()];
    values[0] = Some(vec![vec![0; unknowns]; n2]);
    let mut constraints = Vec::new();
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        let cg = values[g].clone().expect("visited");
        for i in 0..gens.len() {
            let h = group.mul_generator(g, i);
            // c(g s_i) = c(g) + Ad(g) c(s_i); the unknown block of s_i is
            // columns i*n2 .. (i+1)*n2.
            let mut cand = cg.clone();
            for (r, row) in cand.iter_mut().enumerate() {
                for k in 0..n2 {
                    let col = i * n2 + k;
                    row[col] = zm.add(row[col], ad[g][r][k]);
                }
            }
            match &values[h] {
                None => {
                    values[h] = Some(cand);
                    queue.push_back(h);
                }
                Some(ch) => {
                    for r in 0..n2 {
                        let diff: Vec<u64> =
                            ch[r].iter().zip(&cand[r]).map(|(&a, &b)| zm.sub(a, b)).collect();
                        if diff.iter().any(|&v| v != 0) {
                            constraints.push(diff);
                        }
                    }
                }
            }
        }
    }
    Ok(CocycleSystem {
        zm,
        n2,
        unknowns,
        values: values.into_iter().map(|v| v.expect("connected")).collect(),
        constraints,
    })
}

impl CocycleSystem {
    /// Basis of the solution space in the unknowns.
    fn solutions(&self) -> Vec<Vec<u64>> {
        let out_dim = self.constraints.len();
        let columns: Vec<Vec<u64>> = (0..self.unknowns)
            .map(|j| self.constraints.iter().map(|row| row[j]).collect())
            .collect();
        zmod::kernel(self.zm, out_dim, &columns).rows().to_vec()
    }
}

/// A 1-cocycle `G -> M_n(k)`, stored as row-major values per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub values: Vec<Vec<u64>>,
}

impl Cocycle {
    /// Checks `c(gh) = c(g) + g c(h) g^{-1}` on every pair of elements.
    pub fn satisfies_identity(&self, group: &FiniteGroup) -> Result<bool> {
        let zm = prime_field(&group.generator_matrices())?;
        let ad: Vec<Vec<Vec<u64>>> = group
            .elements()
            .iter()
            .map(adjoint_action)
            .collect::<Result<_>>()?;
        if self.values[0].iter().any(|&v| v != 0) {
            return Ok(false);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                let moved = apply(zm, &ad[g], &self.values[h]);
                let rhs: Vec<u64> = self.values[g]
                    .iter()
                    .zip(&moved)
                    .map(|(&a, &b)| zm.add(a, b))
                    .collect();
                if rhs != self.values[gh] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A basis of the cocycle space, each cocycle tabulated on every element.
pub fn cocycle_basis(group: &FiniteGroup) -> Result<Vec<Cocycle>> {
    let sys = cocycle_system(group)?;
    Ok(sys
        .solutions()
        .into_iter()
        .map(|u| Cocycle {
            values: sys
                .values
                .iter()
                .map(|val| apply(sys.zm, val, &u))
                .collect(),
        })
        .collect())
}

/// `dim Z^1`, `dim B^1` and `dim H^1` for the natural action of `group`.
pub fn h1_dimension(group: &FiniteGroup) -> Result<H1Report> {
    group.table()?;
    let sys = cocycle_system(group)?;
    let z1 = sys.solutions().len();
    let gens = group.generator_matrices();
    let n2 = sys.n2;
    let ring = gens[0].ring();
    let n = group.degree();
    let ad: Vec<Vec<Vec<u64>>> = gens.iter().map(adjoint_action).collect::<Result<_>>()?;
    // Coboundary of the basis matrix e_c, evaluated on every generator.
    let coboundaries = (0..n2).map(|c| {
        let mut e = vec![0u64; n2];
        e[c] = 1;
        ad.iter()
            .flat_map(|a| {
                let moved = apply(sys.zm, a, &e);
                moved
                    .iter()
                    .zip(&e)
                    .map(|(&x, &y)| sys.zm.sub(x, y))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<u64>>()
    });
    let b1 = zmod::rank(sys.zm, sys.unknowns, coboundaries);
    let invariants = adjoint_invariants(&gens)?.len();
    if b1 + invariants != n2 {
        return Err(Error::PreconditionViolated(format!(
            "coboundary rank {b1} and {invariants} invariants do not add up to {n2} over {ring} (n = {n})"
        )));
    }
    Ok(H1Report {
        z1,
        b1,
        h1: z1 - b1,
        adjoint_invariants: invariants,
    })
}
