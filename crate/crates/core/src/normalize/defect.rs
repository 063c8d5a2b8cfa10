//! Defects of a lift against an induced lift one level down, and the
//! conjugator that removes them.

use std::fmt;

use crate::error::{Error, Result};
use crate::localring::{quotient_by_m_power, Ideal, RingElt, RingHom, RingSpec};
use crate::matrix::{transvection, unit_matrix, Mat};

use super::family::{index_pairs, GeneratorLift};

/// `rho(t_ab^r) = t_ab^(p_r) + M_ab^r` over a ring `T` with `m_T^(l+1) = 0`,
/// where `p_r` lifts `g(r)` from `T / m^l` and `M_ab^r` has entries in `m^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectTable {
    level: u32,
    source: RingSpec,
    ring: RingSpec,
    n: usize,
    /// `p_r` by index of `r`.
    lifts: Vec<RingElt>,
    /// Indexed like the images of a [`GeneratorLift`].
    defects: Vec<Mat>,
}

impl DefectTable {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn size(&self) -> usize {
        self.lifts.len()
    }

    fn slot(&self, a: usize, b: usize, r_index: usize) -> usize {
        let pair = a * (self.n - 1) + if b > a { b - 1 } else { b };
        pair * self.size() + r_index
    }

    /// The chosen lift `p_r`.
    pub fn lift_of(&self, r: &RingElt) -> &RingElt {
        &self.lifts[self.source.index_of(r) as usize]
    }

    /// The defect `M_ab^r`.
    pub fn defect(&self, a: usize, b: usize, r: &RingElt) -> &Mat {
        &self.defects[self.slot(a, b, self.source.index_of(r) as usize)]
    }

    fn m(&self, a: usize, b: usize, i: usize) -> &Mat {
        &self.defects[self.slot(a, b, i)]
    }

    /// Whether every defect vanishes.
    pub fn is_zero(&self) -> bool {
        self.defects.iter().all(|m| m.raw_data().iter().all(|&v| v == 0))
    }
}

/// Builds the defect table of `lift` (over `T` with `m_T^(level+1) = 0`)
/// against `g: R -> T / m^level`. The lift `p_r` is the least preimage of
/// `g(r)` in canonical order, except `p_1 = 1`.
pub fn defect_table(lift: &GeneratorLift, g: &RingHom, level: u32) -> Result<DefectTable> {
    let ring = lift.target();
    if level == 0 || ring.nilpotency_index() > level + 1 {
        return Err(Error::PreconditionViolated(format!(
            "m^{} is not zero in {ring}",
            level + 1
        )));
    }
    let (quotient, pi) = quotient_by_m_power(ring, level)?;
    if g.source() != lift.source() || g.target() != &quotient {
        return Err(Error::PreconditionViolated(format!(
            "g must map {} to {quotient}",
            lift.source()
        )));
    }
    let mut least: Vec<Option<RingElt>> = vec![None; quotient.size().expect("finite") as usize];
    for x in ring.elements() {
        let slot = &mut least[quotient.index_of(&pi.apply(&x)) as usize];
        if slot.is_none() {
            *slot = Some(x);
        }
    }
    let source = lift.source();
    let one = source.one();
    let lifts: Vec<RingElt> = source
        .elements()
        .map(|r| {
            if r == one {
                ring.one()
            } else {
                least[quotient.index_of(&g.apply(&r)) as usize]
                    .clone()
                    .expect("quotient maps are onto")
            }
        })
        .collect();
    let ml = Ideal::max_power(ring, level);
    let mut defects = Vec::with_capacity(lift.source_size() * lift.n() * (lift.n() - 1));
    for ((a, b), r, image) in lift.entries() {
        let p = &lifts[source.index_of(&r) as usize];
        let m = image.sub(&transvection(lift.n(), a, b, p)?);
        for i in 0..lift.n() {
            for j in 0..lift.n() {
                if !ml.contains(&m.get(i, j)) {
                    return Err(Error::NotCongruentToInduced(format!(
                        "image of t_{}{}^({r}) differs from t^(p_r) at entry ({}, {}) modulo m^{level}",
                        a + 1,
                        b + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        defects.push(m);
    }
    Ok(DefectTable {
        level,
        source: source.clone(),
        ring: ring.clone(),
        n: lift.n(),
        lifts,
        defects,
    })
}

/// Which argument establishes the vanishing of the off-diagonal and
/// outer diagonal defect entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// `n >= 4`: a fourth index is always available.
    N4,
    /// `n = 3`, residue field larger than `F_2`.
    N3,
}

impl Strategy {
    pub fn for_case(n: usize, residue_size: u64) -> Result<Strategy> {
        match n {
            n if n >= 4 => Ok(Strategy::N4),
            3 if residue_size > 2 => Ok(Strategy::N3),
            _ => Err(Error::UnsupportedCase(format!(
                "no defect strategy for n = {n} over F_{residue_size}"
            ))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::N4 => write!(f, "n4"),
            Strategy::N3 => write!(f, "n3"),
        }
    }
}

fn violated(claim: u8, witness: String) -> Error {
    Error::ClaimViolated { claim, witness }
}

fn name(a: usize, b: usize, r: &RingElt) -> String {
    format!("M_{}{}^({r})", a + 1, b + 1)
}

/// Quadruples `(a, b, c, d)` with `a != b`, `c != d` and `{a, c}`, `{b, d}`
/// disjoint.
fn disjoint_quadruples(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let pairs = index_pairs(n);
    pairs
        .iter()
        .flat_map(|&(a, b)| {
            pairs
                .iter()
                .filter(move |&&(c, d)| a != d && c != b)
                .map(move |&(c, d)| (a, b, c, d))
        })
        .collect()
}

/// Validates the defect constraints in logical order and returns `X` with
/// `M_ab^r = p_r (e_ab X - X e_ab) + d_ab^r e_ab`; conjugating by `I + X`
/// brings every image to transvection shape at this level.
pub fn solve_conjugator(table: &DefectTable, strategy: Strategy) -> Result<Mat> {
    let n = table.n;
    let ring = &table.ring;
    match strategy {
        Strategy::N4 if n < 4 => {
            return Err(Error::PreconditionViolated("strategy n4 needs n >= 4".into()))
        }
        Strategy::N3 if n != 3 || ring.residue_field_size() == 2 => {
            return Err(Error::PreconditionViolated(
                "strategy n3 needs n = 3 and a residue field larger than F_2".into(),
            ))
        }
        _ => {}
    }
    let size = table.size();
    let elts: Vec<RingElt> = table.source.elements().collect();
    let one_index = table.source.index_of(&table.source.one()) as usize;
    let p = &table.lifts;
    let e = |a: usize, b: usize| unit_matrix(ring, n, a, b);
    let quadruples = disjoint_quadruples(n);

    // Claim 1: lifts of commuting transvections commute.
    for &(a, b, c, d) in &quadruples {
        let (eab, ecd) = (e(a, b), e(c, d));
        for i in 0..size {
            let m = table.m(a, b, i);
            for j in 0..size {
                let k = table.m(c, d, j);
                let lhs = m.mul(&ecd).sub(&ecd.mul(m)).scale(&p[j]);
                let rhs = k.mul(&eab).sub(&eab.mul(k)).scale(&p[i]);
                if lhs != rhs {
                    return Err(violated(
                        1,
                        format!("{} against {}", name(a, b, &elts[i]), name(c, d, &elts[j])),
                    ));
                }
            }
        }
    }
    let pairs = index_pairs(n);
    let argument = |strategy: Strategy| match strategy {
        Strategy::N4 => "with a fourth index",
        Strategy::N3 => "from commuting with t_ac and t_cb",
    };
    // Claim 2: entries off the diagonal, row a and column b vanish.
    for &(a, b) in &pairs {
        for (i, r) in elts.iter().enumerate() {
            let m = table.m(a, b, i);
            for x in (0..n).filter(|&x| x != a) {
                for y in (0..n).filter(|&y| y != b && y != x) {
                    if !m.get(x, y).is_zero() {
                        return Err(violated(
                            2,
                            format!(
                                "{}({}, {}) = {} ({})",
                                name(a, b, r),
                                x + 1,
                                y + 1,
                                m.get(x, y),
                                argument(strategy)
                            ),
                        ));
                    }
                }
            }
        }
    }
    // Claim 3: det = prod (1 + M(i, i)) = 1 + tr M = 1.
    for ((a, b), i) in pairs.iter().flat_map(|&ab| (0..size).map(move |i| (ab, i))) {
        let m = table.m(a, b, i);
        let image = transvection(n, a, b, &p[i])?.add(m);
        let det = image.det();
        if !det.is_one() || !m.trace().is_zero() {
            return Err(violated(
                3,
                format!("det = {det}, tr {} = {}", name(a, b, &elts[i]), m.trace()),
            ));
        }
    }
    // Claim 4: diagonal entries outside {a, b} vanish.
    for &(a, b) in &pairs {
        for (i, r) in elts.iter().enumerate() {
            let m = table.m(a, b, i);
            for c in (0..n).filter(|&c| c != a && c != b) {
                if !m.get(c, c).is_zero() {
                    let why = match strategy {
                        Strategy::N4 => "commutator of t_ad and t_db",
                        Strategy::N3 => "conjugation by d_ac^lambda",
                    };
                    return Err(violated(
                        4,
                        format!("{}({c1}, {c1}) = {} ({why})", name(a, b, r), m.get(c, c), c1 = c + 1),
                    ));
                }
            }
        }
    }
    // Claim 5: M(a, a) = -M(b, b).
    for &(a, b) in &pairs {
        for (i, r) in elts.iter().enumerate() {
            let m = table.m(a, b, i);
            if !(&m.get(a, a) + &m.get(b, b)).is_zero() {
                return Err(violated(5, name(a, b, r)));
            }
        }
    }
    // Claim 6: the two entry relations between distinct commuting pairs.
    for &(a, b, c, d) in quadruples.iter().filter(|q| (q.0, q.1) != (q.2, q.3)) {
        for i in 0..size {
            let m = table.m(a, b, i);
            for j in 0..size {
                let k = table.m(c, d, j);
                let first = &p[j] * &m.get(a, c) + &p[i] * &k.get(b, d);
                let second = &p[j] * &m.get(d, b) + &p[i] * &k.get(c, a);
                if !first.is_zero() || !second.is_zero() {
                    return Err(violated(
                        6,
                        format!("{} against {}", name(a, b, &elts[i]), name(c, d, &elts[j])),
                    ));
                }
            }
        }
    }
    // Claim 7: X(b, a) = M_xb^1(x, a), independent of x != b.
    let mut x_mat = Mat::zeros(ring, n);
    for b in 0..n {
        for a in (0..n).filter(|&a| a != b) {
            let mut values = (0..n)
                .filter(|&x| x != b)
                .map(|x| (x, table.m(x, b, one_index).get(x, a)));
            let (_, first) = values.next().expect("n >= 2");
            if let Some((x, other)) = values.find(|(_, v)| *v != first) {
                return Err(violated(
                    7,
                    format!(
                        "M_{x1}{b1}^1({x1}, {a1}) = {other} differs from {first}",
                        x1 = x + 1,
                        b1 = b + 1,
                        a1 = a + 1
                    ),
                ));
            }
            x_mat.set(b, a, &first);
        }
    }
    for &(a, b) in &pairs {
        let eab = e(a, b);
        let shift = eab.mul(&x_mat).sub(&x_mat.mul(&eab));
        for (i, r) in elts.iter().enumerate() {
            let rest = table.m(a, b, i).sub(&shift.scale(&p[i]));
            for u in 0..n {
                for v in 0..n {
                    if (u, v) != (a, b) && !rest.get(u, v).is_zero() {
                        return Err(violated(
                            7,
                            format!(
                                "{} - p_r (e X - X e) is nonzero at ({}, {})",
                                name(a, b, r),
                                u + 1,
                                v + 1
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(x_mat)
}
