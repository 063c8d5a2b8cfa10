use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::localring::RingSpec;
use crate::matrix::Mat;

/// Groups up to this order get a full multiplication table.
pub const TABLE_LIMIT: usize = 4096;

/// Default closure cap for [`FiniteGroup::generate`].
pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite matrix group given by its full element list.
///
/// Elements are sorted with the identity first and the rest in canonical
/// (lexicographic) order.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    ring: RingSpec,
    n: usize,
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    generators: Vec<usize>,
    /// `right[g][i]` is the position of `elements[g] * generators[i]`.
    right: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    /// A shortest word in the generators for each element, via BFS.
    words: Vec<Vec<usize>>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Breadth-first closure of `gens` under right multiplication.
    pub fn generate(gens: &[Mat], cap: usize) -> Result<FiniteGroup> {
        let first = gens
            .first()
            .ok_or_else(|| Error::PreconditionViolated("no generators".into()))?;
        let ring = first.ring().clone();
        let n = first.n();
        for g in gens {
            if g.ring() != &ring || g.n() != n {
                return Err(Error::MixedRings);
            }
            if !g.det().is_unit() {
                return Err(Error::NotInvertible);
            }
        }
        let id = Mat::identity(&ring, n);
        let mut found: HashMap<Mat, usize> = HashMap::new();
        let mut order: Vec<Mat> = vec![id.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        found.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let prod = order[i].mul(g);
                if !found.contains_key(&prod) {
                    if order.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let mut w = words[i].clone();
                    w.push(gi);
                    found.insert(prod.clone(), order.len());
                    queue.push_back(order.len());
                    order.push(prod);
                    words.push(w);
                }
            }
        }

        // Canonical order: identity first, then lexicographic.
        let mut perm: Vec<usize> = (1..order.len()).collect();
        perm.sort_by(|&a, &b| order[a].cmp(&order[b]));
        perm.insert(0, 0);
        let mut old_to_new = vec![0usize; order.len()];
        for (new, &old) in perm.iter().enumerate() {
            old_to_new[old] = new;
        }
        let elements: Vec<Mat> = perm.iter().map(|&o| order[o].clone()).collect();
        let words: Vec<Vec<usize>> = perm.iter().map(|&o| words[o].clone()).collect();
        let index: HashMap<Mat, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let right: Vec<Vec<usize>> = elements
            .iter()
            .map(|m| gens.iter().map(|g| index[&m.mul(g)]).collect())
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let inverses = elements
            .iter()
            .map(|m| index[&m.inverse().expect("group element")])
            .collect();
        let mut group = FiniteGroup {
            ring,
            n,
            elements,
            index,
            generators,
            right,
            inverses,
            words,
            table: None,
        };
        if group.order() <= TABLE_LIMIT {
            group.table = Some(group.build_table());
        }
        Ok(group)
    }

    fn build_table(&self) -> Vec<u32> {
        let ord = self.order();
        let mut table = vec![0u32; ord * ord];
        for h in 0..ord {
            let w = &self.words[h];
            for g in 0..ord {
                let gh = w.iter().fold(g, |acc, &gi| self.right[acc][gi]);
                table[g * ord + h] = gh as u32;
            }
        }
        table
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn position(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Positions of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<Mat> {
        self.generators.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Position of `elements[g] * elements[h]`.
    pub fn mul(&self, g: usize, h: usize) -> usize {
        match &self.table {
            Some(t) => t[g * self.order() + h] as usize,
            None => self.words[h].iter().fold(g, |acc, &gi| self.right[acc][gi]),
        }
    }

    pub fn table(&self) -> Result<&[u32]> {
        self.table.as_deref().ok_or(Error::TableMissing)
    }

    /// Position of `elements[g] * generators[i]`.
    pub fn mul_generator(&self, g: usize, i: usize) -> usize {
        self.right[g][i]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// A shortest word in the generators representing element `g`.
    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.index.contains_key(m)
    }

    /// Order of an element.
    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut cur = g;
        while cur != 0 {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    /// The subgroup generated by the given matrices.
    pub fn subgroup(&self, gens: &[Mat]) -> Result<FiniteGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::PreconditionViolated(format!("{g} is not in the group")));
        }
        FiniteGroup::generate(gens, self.order())
    }

    /// The subgroup generated by all commutators `g h g^{-1} h^{-1}`.
    pub fn commutator_subgroup(&self) -> Result<FiniteGroup> {
        let mut comms: Vec<Mat> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in 0..self.order() {
            for h in 0..self.order() {
                let c = self.mul(self.mul(g, h), self.mul(self.inverse(g), self.inverse(h)));
                if seen.insert(c) {
                    comms.push(self.elements[c].clone());
                }
            }
        }
        comms.sort();
        FiniteGroup::generate(&comms, self.order())
    }
}

/// `|SL_n(F_q)| = prod_{i<n} (q^n - q^i) / (q - 1)`.
pub fn sl_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let gl: u128 = (0..n).map(|i| q.pow(n) - q.pow(i)).product();
    gl / (q - 1)
}

/// `|GL_n(F_q)|`.
pub fn gl_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}
