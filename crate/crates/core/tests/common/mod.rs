//! Independent reference computations used as oracles by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use maxsub::GroupTable;

/// Multiplication on raw image vectors, right to left: (p*q)(x) = p(q(x)).
pub fn mul(p: &[u32], q: &[u32]) -> Vec<u32> {
    q.iter().map(|&x| p[x as usize]).collect()
}

pub struct RawGroup {
    pub elems: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    pub identity: usize,
}

impl RawGroup {
    pub fn from_table(t: &GroupTable) -> Self {
        let elems: Vec<Vec<u32>> = t.elements().iter().map(|p| p.images().to_vec()).collect();
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let identity = elems
            .iter()
            .position(|e| e.iter().enumerate().all(|(i, &x)| i as u32 == x))
            .unwrap();
        RawGroup {
            elems,
            index,
            identity,
        }
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.index[&mul(&self.elems[a], &self.elems[b])]
    }

    /// Smallest subset containing `seed` and closed under multiplication.
    pub fn closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        set.insert(self.identity);
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for b in current {
                for c in [self.product(a, b), self.product(b, a)] {
                    if set.insert(c) {
                        frontier.push(c);
                    }
                }
            }
        }
        set
    }

    /// All multiplicatively closed subsets, found by adding one element at a
    /// time to known closed subsets and closing again.
    pub fn closed_subsets(&self) -> HashSet<BTreeSet<usize>> {
        let start = self.closure(&BTreeSet::new());
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for g in 0..self.elems.len() {
                if s.contains(&g) {
                    continue;
                }
                let mut seed = s.clone();
                seed.insert(g);
                let t = self.closure(&seed);
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn conjugate_set(&self, set: &BTreeSet<usize>, g: usize) -> BTreeSet<usize> {
        let gi = self.inverse(g);
        set.iter()
            .map(|&h| self.product(self.product(gi, h), g))
            .collect()
    }

    pub fn inverse(&self, g: usize) -> usize {
        let e = &self.elems[g];
        let mut inv = vec![0u32; e.len()];
        for (i, &x) in e.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        self.index[&inv]
    }
}

pub fn oracle_subgroup_count(t: &GroupTable) -> usize {
    RawGroup::from_table(t).closed_subsets().len()
}
