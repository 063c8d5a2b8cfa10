//! Writing a unimodular matrix as a product of transvections.
//!
//! Row and column operations bring `M` to diagonal form, working on the
//! leading `k x k` block from the last index down. The diagonal part is then
//! split into matrices `d_{i,i+1}^w`, each of which is a short transvection
//! word.

use crate::error::{Error, Result};
use crate::localring::{Ideal, RingElt};

use super::standard::TransvectionWord;
use super::Mat;

/// Elementary operations applied to `M`: `L_m ... L_1 M R_1 ... R_m = D`.
struct Reduction {
    left: Vec<(usize, usize, RingElt)>,
    right: Vec<(usize, usize, RingElt)>,
}

/// Decomposes `m` into transvections `t_ab^r` with every `r` in `ideal`.
///
/// Requires `det m = 1` and `m = I` modulo `ideal^2`.
pub fn decompose_transvections(m: &Mat, ideal: &Ideal) -> Result<TransvectionWord> {
    let ring = m.ring();
    let n = m.n();
    if ideal.ring() != ring {
        return Err(Error::MixedRings);
    }
    if !m.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let full = ideal.is_unit();
    let square = ideal.product(ideal);
    if !full && !m.congruent_to_identity(&square) {
        return Err(Error::NotInCongruenceSubgroup(m.to_string()));
    }

    let mut a = m.entries();
    let mut red = Reduction {
        left: Vec::new(),
        right: Vec::new(),
    };
    for k in (1..n).rev() {
        if !a[k][k].is_unit() {
            // Only reachable when the ideal is the whole ring: the last row
            // of the invertible leading block has a unit, and adding its
            // column to column k makes the pivot a unit.
            let j = (0..k)
                .find(|&j| a[k][j].is_unit())
                .ok_or(Error::NotUnimodular)?;
            let one = ring.one();
            for row in a.iter_mut().take(k + 1) {
                row[k] = &row[k] + &row[j];
            }
            red.right.push((j, k, one));
        }
        let pinv = a[k][k].inverse()?;
        for i in 0..k {
            if !a[i][k].is_zero() {
                let c = -&(&a[i][k] * &pinv);
                let (top, bottom) = a.split_at_mut(k);
                for (x, y) in top[i].iter_mut().zip(&bottom[0]).take(k + 1) {
                    *x = &*x + &(&c * y);
                }
                red.left.push((i, k, c));
            }
        }
        for j in 0..k {
            if !a[k][j].is_zero() {
                let c = -&(&a[k][j] * &pinv);
                for row in a.iter_mut().take(k + 1) {
                    row[j] = &row[j] + &(&c * &row[k]);
                }
                red.right.push((k, j, c));
            }
        }
    }

    let diag: Vec<RingElt> = (0..n).map(|i| a[i][i].clone()).collect();
    let mut word = TransvectionWord::new(n);
    for (i, k, c) in &red.left {
        word.push(*i, *k, -c);
    }
    word.extend(&diagonal_word(&diag, ideal, full)?);
    for (i, j, c) in red.right.iter().rev() {
        word.push(*i, *j, -c);
    }
    debug_assert_eq!(word.evaluate(ring), *m);
    Ok(word)
}

/// `d(u_1, ..., u_n) = prod_i d_{i,i+1}^{u_1 ... u_i}`.
fn diagonal_word(diag: &[RingElt], ideal: &Ideal, full: bool) -> Result<TransvectionWord> {
    let n = diag.len();
    let ring = diag[0].ring();
    let mut word = TransvectionWord::new(n);
    let mut w = ring.one();
    for i in 0..n - 1 {
        w = &w * &diag[i];
        if w.is_one() {
            continue;
        }
        let part = if full {
            pair_word_full(n, i, i + 1, &w)?
        } else {
            pair_word_small(n, i, i + 1, &w, ideal)?
        };
        word.extend(&part);
    }
    Ok(word)
}

/// `d_ab^w = sigma_ab^w sigma_ab^{-1}` with
/// `sigma_ab^u = t_ab^u t_ba^{-1/u} t_ab^u`.
fn pair_word_full(n: usize, a: usize, b: usize, w: &RingElt) -> Result<TransvectionWord> {
    let ring = w.ring();
    let mut word = TransvectionWord::new(n);
    let one = ring.one();
    for u in [w.clone(), -&one] {
        let ui = u.inverse()?;
        word.push(a, b, u.clone());
        word.push(b, a, -&ui);
        word.push(a, b, u);
    }
    Ok(word)
}

/// For `w = 1 + sum_k r_k s_k` with `r_k, s_k` in the ideal: peel off
/// `u = 1 + r_1 s_1`, rescale the remaining `r_k` by `u^{-1}`, and write each
/// `d_ab^u` as `t_ab^r t_ba^s t_ab^{-r/u} t_ba^{-su}`.
fn pair_word_small(
    n: usize,
    a: usize,
    b: usize,
    w: &RingElt,
    ideal: &Ideal,
) -> Result<TransvectionWord> {
    let ring = w.ring();
    let one = ring.one();
    let mut terms = ideal
        .factor_in_product(ideal, &(w - &one))
        .ok_or_else(|| Error::NotInCongruenceSubgroup(format!("diagonal entry {w}")))?;
    let mut word = TransvectionWord::new(n);
    while !terms.is_empty() {
        let (r, s) = terms.remove(0);
        let u = &one + &(&r * &s);
        let ui = u.inverse()?;
        word.push(a, b, r.clone());
        word.push(b, a, s.clone());
        word.push(a, b, -&(&r * &ui));
        word.push(b, a, -&(&s * &u));
        for t in terms.iter_mut() {
            t.0 = &t.0 * &ui;
        }
    }
    Ok(word)
}
