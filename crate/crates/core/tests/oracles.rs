//! Independent brute-force oracles for the tangent dimensions and the
//! lift counts.

use std::collections::HashSet;

use defring::acceptance::lifts_of;
use defring::defo::{classify_strict, h1_dimension, lift_matrix};
use defring::groups::{FiniteGroup, NamedGroup};
use defring::{Mat, RingSpec};

/// Rank of a matrix over F_p by plain row reduction.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).expect("unit");
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = *v * scale % p;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (v, w) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p * p - f * w % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn flat(m: &Mat) -> Vec<u64> {
    m.entries().iter().flatten().map(|x| x.coeffs()[0]).collect()
}

/// `Ad(g)` as an `n^2 x n^2` matrix acting on row-major vectors.
fn adjoint(g: &Mat) -> Vec<Vec<u64>> {
    let ring = g.ring();
    let n = g.n();
    let ginv = g.inverse().unwrap();
    let mut columns = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut e = Mat::zeros(ring, n);
            e.set(i, j, &ring.one());
            columns.push(flat(&g.mul(&e).mul(&ginv)));
        }
    }
    (0..n * n).map(|r| columns.iter().map(|c| c[r]).collect()).collect()
}

/// `dim H^1` from unknowns `c(g)` for every group element subject to
/// `c(s h) = c(s) + s . c(h)` for generators `s`, minus `n^2 - dim Ad^G`.
fn dense_h1(group: &FiniteGroup) -> usize {
    let p = group.ring().p();
    let n2 = group.degree() * group.degree();
    let order = group.order();
    let unknowns = order * n2;
    let gens = group.generator_matrices();
    let mut rows = Vec::new();
    let mut invariant_rows = Vec::new();
    for s in &gens {
        let ad = adjoint(s);
        let si = group.position(s).unwrap();
        for h in 0..order {
            let sh = group.position(&s.mul(group.element(h))).unwrap();
            for r in 0..n2 {
                let mut row = vec![0u64; unknowns];
                row[sh * n2 + r] += 1;
                row[si * n2 + r] = (row[si * n2 + r] + p - 1) % p;
                for (k, &a) in ad[r].iter().enumerate() {
                    row[h * n2 + k] = (row[h * n2 + k] + p - a % p) % p;
                }
                rows.push(row);
            }
        }
        for r in 0..n2 {
            let mut row = ad[r].clone();
            row[r] = (row[r] + p - 1) % p;
            invariant_rows.push(row);
        }
    }
    let z1 = unknowns - rank_mod_p(rows, p);
    let invariants = n2 - rank_mod_p(invariant_rows, p);
    let b1 = n2 - invariants;
    z1 - b1
}

#[test]
fn dense_solver_agrees_with_generator_solver() {
    for g in NamedGroup::ALL {
        let group = g.group();
        assert_eq!(dense_h1(&group), h1_dimension(&group).unwrap().h1, "{g}");
    }
}

#[test]
fn tangent_dimensions_of_named_groups() {
    let dims: Vec<usize> = NamedGroup::ALL.iter().map(|g| dense_h1(&g.group())).collect();
    // sl2f2, sl2f3, sl2f5, sl3f2, gl2f3
    assert_eq!(dims, vec![0, 1, 1, 0, 0]);
}

/// Every generator tuple lifting the base images that defines a
/// homomorphism on the whole group, tested against the group's own
/// multiplication rather than a presentation.
fn brute_force_lifts(g: NamedGroup, target: &RingSpec) -> Vec<Vec<Mat>> {
    let group = g.group();
    let gens = group.generator_matrices();
    let n = group.degree();
    let max: Vec<_> = target.elements().filter(|x| x.in_max_ideal()).collect();
    let mut perturbations = vec![Mat::zeros(target, n)];
    for i in 0..n {
        for j in 0..n {
            perturbations = perturbations
                .into_iter()
                .flat_map(|m| {
                    max.iter().map(move |x| {
                        let mut m = m.clone();
                        m.set(i, j, x);
                        m
                    })
                })
                .collect();
        }
    }
    let fibers: Vec<Vec<Mat>> = gens
        .iter()
        .enumerate()
        .map(|(i, b)| {
            // A homomorphism preserves each generator's order up to division.
            let order = group.element_order(group.generators()[i]) as i64;
            perturbations
                .iter()
                .map(|e| lift_matrix(target, b).add(e))
                .filter(|m| m.pow(order).unwrap().is_identity())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    if fibers.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; gens.len()];
    'tuples: loop {
        let images: Vec<Mat> = idx.iter().zip(&fibers).map(|(&i, f)| f[i].clone()).collect();
        let rho: Vec<Mat> = (0..group.order())
            .map(|e| {
                group
                    .word(e)
                    .iter()
                    .fold(Mat::identity(target, n), |acc, &s| acc.mul(&images[s]))
            })
            .collect();
        let hom = (0..group.order()).all(|e| {
            (0..gens.len()).all(|s| {
                let es = group.position(&group.element(e).mul(&gens[s])).unwrap();
                rho[e].mul(&images[s]) == rho[es]
            })
        });
        if hom {
            out.push(images);
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < fibers[k].len() {
                continue 'tuples;
            }
            idx[k] = 0;
        }
        break;
    }
    out
}

fn brute_force_classes(lifts: &[Vec<Mat>], target: &RingSpec, n: usize) -> usize {
    let max: Vec<_> = target.elements().filter(|x| x.in_max_ideal()).collect();
    let mut kernel = vec![Mat::identity(target, n)];
    for i in 0..n {
        for j in 0..n {
            kernel = kernel
                .into_iter()
                .flat_map(|m| {
                    max.iter().map(move |x| {
                        let mut m = m.clone();
                        let v = &m.get(i, j) + x;
                        m.set(i, j, &v);
                        m
                    })
                })
                .collect();
        }
    }
    let mut seen: HashSet<Vec<Mat>> = HashSet::new();
    let mut classes = 0;
    for l in lifts {
        if seen.contains(l) {
            continue;
        }
        classes += 1;
        for k in &kernel {
            let kinv = k.inverse().unwrap();
            seen.insert(l.iter().map(|m| k.mul(m).mul(&kinv)).collect());
        }
    }
    classes
}

#[test]
fn enumeration_matches_brute_force() {
    for (g, spec, classes) in [
        (NamedGroup::Sl2F2, "Z/4", 1),
        (NamedGroup::Sl2F3, "Z/9", 3),
        (NamedGroup::Sl2F3, "Z/3[x]/(x^2)", 3),
        (NamedGroup::Sl2F2, "Z/2[x]/(x^2)", 1),
        (NamedGroup::Sl3F2, "Z/4", 1),
        (NamedGroup::Sl2F5, "Z/25", 0),
        (NamedGroup::Sl2F5, "Z/5[x]/(x^2)", 5),
    ] {
        let target: RingSpec = spec.parse().unwrap();
        let mut oracle = brute_force_lifts(g, &target);
        oracle.sort();
        let found: Vec<Vec<Mat>> = lifts_of(g, &target, 3)
            .unwrap()
            .into_iter()
            .map(|l| l.into_images())
            .collect();
        assert_eq!(found, oracle, "{g} -> {spec}");
        let n = g.degree();
        assert_eq!(brute_force_classes(&oracle, &target, n), classes, "{g} -> {spec}");
        let lifts = lifts_of(g, &target, 1).unwrap();
        assert_eq!(classify_strict(&lifts).unwrap().len(), classes, "{g} -> {spec}");
    }
}
