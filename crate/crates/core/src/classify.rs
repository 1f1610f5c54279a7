//! Maximality depth of subgroups (Max(G,H), 2-maximal, strictly 2-maximal,
//! n-maximal chains) and the structural predicates and distinguished
//! subgroups used to state hypotheses about groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{
    core, cyclic, extend, normal_closure, normal_closure_in, normalizer, ClassedLattice,
    SubgroupSet,
};
use crate::perm::{gcd, GroupTable};

/// A chain `H = S₀ < S₁ < … < Sₙ = G` in which every step is a covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    /// Lattice indices, bottom first.
    pub chain: Vec<usize>,
    pub orders: Vec<usize>,
    /// One flag per adjacent pair; all true for certificates built here.
    pub covering: Vec<bool>,
}

impl ChainCertificate {
    /// Number of covering steps, i.e. the n for which the chain witnesses n-maximality.
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn is_valid(&self, lat: &ClassedLattice<'_>) -> bool {
        self.chain.last() == Some(&lat.top())
            && self.covering.len() + 1 == self.chain.len()
            && self
                .chain
                .windows(2)
                .zip(&self.covering)
                .all(|(w, &c)| c && lat.is_cover(w[0], w[1]))
    }
}

#[derive(Debug, Clone)]
pub struct MaximalityProfile {
    pub subject: usize,
    pub max_over: Vec<usize>,
    pub is_2max: bool,
    pub is_strictly_2max: bool,
    /// One certificate per achievable chain length.
    pub degrees: BTreeMap<usize, ChainCertificate>,
    /// One certificate per distinct order profile of a maximal chain.
    pub profiles: BTreeMap<Vec<usize>, ChainCertificate>,
}

impl MaximalityProfile {
    pub fn degree_set(&self) -> BTreeSet<usize> {
        self.degrees.keys().copied().collect()
    }
}

fn check_index(lat: &ClassedLattice<'_>, h: usize) -> Result<()> {
    if h < lat.len() {
        Ok(())
    } else {
        Err(Error::NotInScope)
    }
}

/// Maximal subgroups of G containing `h`; empty iff `h` is G.
pub fn max_over(lat: &ClassedLattice<'_>, h: usize) -> Result<Vec<usize>> {
    check_index(lat, h)?;
    let sub = lat.subgroup(h);
    Ok(lat
        .maximal_subgroups()
        .iter()
        .copied()
        .filter(|&m| sub.is_subgroup_of(lat.subgroup(m)))
        .collect())
}

/// Some `M ∈ Max(G, h)` in which `h` is maximal, if any.
pub fn is_2maximal(lat: &ClassedLattice<'_>, h: usize) -> Result<Option<usize>> {
    check_index(lat, h)?;
    if h == lat.top() {
        return Err(Error::NotProper);
    }
    Ok(lat
        .covers_of(h)
        .iter()
        .copied()
        .find(|&m| lat.is_cover(m, lat.top())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    /// A maximal subgroup of G containing the subject in which it is not maximal.
    NotStrict {
        witness: usize,
    },
}

pub fn is_strictly_2maximal(lat: &ClassedLattice<'_>, h: usize) -> Result<Strictness> {
    if is_2maximal(lat, h)?.is_none() {
        return Err(Error::NotTwoMaximal);
    }
    Ok(
        match max_over(lat, h)?.into_iter().find(|&m| !lat.is_cover(h, m)) {
            None => Strictness::Strict,
            Some(witness) => Strictness::NotStrict { witness },
        },
    )
}

/// Lengths of all maximal chains from `h` up to G, with certificates.
pub fn maximality_degrees(lat: &ClassedLattice<'_>, h: usize) -> Result<MaximalityProfile> {
    check_index(lat, h)?;
    if h == lat.top() {
        return Err(Error::NotProper);
    }
    let interval = lat.above(h);
    let mut chains: BTreeMap<usize, BTreeMap<Vec<usize>, Vec<usize>>> = BTreeMap::new();
    let top = lat.top();
    chains.insert(
        top,
        BTreeMap::from([(vec![lat.subgroup(top).order()], vec![top])]),
    );
    for &x in interval.iter().rev().skip(1) {
        let mut mine: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &y in lat.covers_of(x) {
            let Some(up) = chains.get(&y) else { continue };
            for (prof, chain) in up {
                let mut p = vec![lat.subgroup(x).order()];
                p.extend_from_slice(prof);
                mine.entry(p).or_insert_with(|| {
                    let mut c = vec![x];
                    c.extend_from_slice(chain);
                    c
                });
            }
        }
        chains.insert(x, mine);
    }
    let profiles: BTreeMap<Vec<usize>, ChainCertificate> = chains
        .remove(&h)
        .unwrap_or_default()
        .into_iter()
        .map(|(orders, chain)| {
            let covering = vec![true; chain.len() - 1];
            (
                orders.clone(),
                ChainCertificate {
                    chain,
                    orders,
                    covering,
                },
            )
        })
        .collect();
    let mut degrees = BTreeMap::new();
    for cert in profiles.values() {
        degrees.entry(cert.length()).or_insert_with(|| cert.clone());
    }
    let over = max_over(lat, h)?;
    let covered_by: Vec<bool> = over.iter().map(|&m| lat.is_cover(h, m)).collect();
    let is_2max = covered_by.iter().any(|&c| c);
    Ok(MaximalityProfile {
        subject: h,
        is_strictly_2max: is_2max && covered_by.iter().all(|&c| c),
        is_2max,
        max_over: over,
        degrees,
        profiles,
    })
}

#[derive(Debug, Clone, Default)]
pub struct Max2Sets {
    /// Class representatives of the 2-maximal subgroups.
    pub max2: Vec<usize>,
    /// Class representatives of the strictly 2-maximal subgroups.
    pub strict: Vec<usize>,
    pub max2_count: usize,
    pub strict_count: usize,
}

impl Max2Sets {
    pub fn all_strict(&self) -> bool {
        self.max2 == self.strict
    }
}

/// Max₂(G) and Max₂*(G) up to conjugacy. Requires the full lattice.
pub fn max2_sets(lat: &ClassedLattice<'_>) -> Result<Max2Sets> {
    if !lat.is_full() {
        return Err(Error::NotInScope);
    }
    let mut out = Max2Sets::default();
    for class in lat.classes() {
        let r = class.representative;
        if r == lat.top() || is_2maximal(lat, r)?.is_none() {
            continue;
        }
        out.max2.push(r);
        out.max2_count += class.members.len();
        if is_strictly_2maximal(lat, r)? == Strictness::Strict {
            out.strict.push(r);
            out.strict_count += class.members.len();
        }
    }
    Ok(out)
}

pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// True for 1 and for prime powers.
pub fn is_primary_order(n: usize) -> bool {
    prime_factors(n).len() <= 1
}

pub fn is_primary(t: &GroupTable) -> bool {
    is_primary_order(t.order())
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub fn is_abelian_subgroup(t: &GroupTable, h: &SubgroupSet) -> bool {
    let gens = h.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| t.product(a, b) == t.product(b, a)))
}

/// Orbits of G acting on its elements by conjugation; one representative each.
pub fn element_class_reps(t: &GroupTable) -> Vec<usize> {
    let mut seen = vec![false; t.order()];
    let mut reps = Vec::new();
    for g in 0..t.order() {
        if seen[g] {
            continue;
        }
        reps.push(g);
        seen[g] = true;
        let mut stack = vec![g];
        while let Some(x) = stack.pop() {
            for &s in t.generators() {
                let y = t.conjugate_element(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// All normal subgroups of G, sorted by `(order, mask)`.
pub fn normal_subgroups(t: &GroupTable) -> Vec<SubgroupSet> {
    let mut seeds: Vec<SubgroupSet> = Vec::new();
    for g in element_class_reps(t).into_iter().skip(1) {
        let n = normal_closure(t, &cyclic(t, g));
        if !seeds.contains(&n) {
            seeds.push(n);
        }
    }
    let mut all = vec![SubgroupSet::trivial(t)];
    let mut i = 0;
    while i < all.len() {
        for s in &seeds {
            if s.is_subgroup_of(&all[i]) {
                continue;
            }
            let j = extend(t, &all[i], &s.generators(), false);
            if !all.contains(&j) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort();
    all
}

/// Minimal nontrivial normal subgroups.
pub fn minimal_normals(t: &GroupTable) -> Vec<SubgroupSet> {
    let normals = normal_subgroups(t);
    normals
        .iter()
        .skip(1)
        .filter(|n| {
            !normals
                .iter()
                .any(|m| m.order() > 1 && m.is_proper_subgroup_of(n))
        })
        .cloned()
        .collect()
}

/// A chief series `1 = N₀ < N₁ < … < N_r = G`, each step choosing the first
/// (by order, then mask) normal subgroup minimal over the previous one.
pub fn chief_series(t: &GroupTable) -> Vec<SubgroupSet> {
    let normals = normal_subgroups(t);
    let mut series = vec![normals[0].clone()];
    while series.last().unwrap().order() < t.order() {
        let cur = series.last().unwrap();
        let next = normals
            .iter()
            .find(|n| cur.is_proper_subgroup_of(n))
            .expect("G is normal")
            .clone();
        series.push(next);
    }
    series
}

/// Orders of the chief factors, bottom first.
pub fn chief_factor_orders(t: &GroupTable) -> Vec<usize> {
    chief_series(t)
        .windows(2)
        .map(|w| w[1].order() / w[0].order())
        .collect()
}

pub fn derived_subgroup(t: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    let gens = h.generators();
    let comms: Vec<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| t.commutator(a, b))
        .collect();
    let seed = SubgroupSet::generated(t, &comms);
    normal_closure_in(t, &seed, h)
}

pub fn derived_series(t: &GroupTable) -> Vec<SubgroupSet> {
    let mut series = vec![SubgroupSet::whole(t)];
    loop {
        let cur = series.last().unwrap();
        let next = derived_subgroup(t, cur);
        if next == *cur {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(t: &GroupTable) -> bool {
    derived_series(t).last().unwrap().order() == 1
}

pub fn is_supersoluble(t: &GroupTable) -> bool {
    chief_factor_orders(t).into_iter().all(is_prime)
}

/// Every chief factor is a p-group or a p′-group.
pub fn is_p_soluble(t: &GroupTable, p: usize) -> bool {
    chief_factor_orders(t)
        .into_iter()
        .all(|f| p_part(f, p) == f || f % p != 0)
}

/// All Sylow subgroups normal, tested by counting p-elements.
pub fn is_nilpotent(t: &GroupTable) -> bool {
    prime_factors(t.order()).into_iter().all(|p| {
        let p_elements = (0..t.order())
            .filter(|&g| p_part(t.element_order(g), p) == t.element_order(g))
            .count();
        p_elements == p_part(t.order(), p)
    })
}

pub fn is_nilpotent_subgroup(t: &GroupTable, h: &SubgroupSet) -> bool {
    prime_factors(h.order()).into_iter().all(|p| {
        let p_elements = h
            .elements()
            .filter(|&g| p_part(t.element_order(g), p) == t.element_order(g))
            .count();
        p_elements == p_part(h.order(), p)
    })
}

/// A Sylow p-subgroup, grown one normalizing p-element at a time.
pub fn sylow(t: &GroupTable, p: usize) -> SubgroupSet {
    let target = p_part(t.order(), p);
    let mut cur = SubgroupSet::trivial(t);
    while cur.order() < target {
        let n = normalizer(t, &cur);
        let g = n
            .elements()
            .find(|&g| !cur.contains(g) && p_part(t.element_order(g), p) == t.element_order(g))
            .expect("a proper p-subgroup has a p-element in its normalizer outside it");
        cur = extend(t, &cur, &[g], false);
    }
    cur
}

/// Largest normal p-subgroup.
pub fn o_p(t: &GroupTable, p: usize) -> SubgroupSet {
    core(t, &sylow(t, p))
}

/// Largest normal subgroup of order coprime to p.
pub fn o_p_prime(t: &GroupTable, p: usize) -> SubgroupSet {
    normal_subgroups(t)
        .into_iter()
        .filter(|n| n.order() % p != 0)
        .max_by_key(|n| n.order())
        .expect("trivial subgroup qualifies")
}

/// Fitting subgroup: the product of the `o_p` over primes dividing |G|.
pub fn fitting(t: &GroupTable) -> SubgroupSet {
    prime_factors(t.order())
        .into_iter()
        .fold(SubgroupSet::trivial(t), |acc, p| {
            let op = o_p(t, p);
            extend(t, &acc, &op.generators(), false)
        })
}

/// Intersection of all maximal subgroups (G itself when G is trivial).
pub fn frattini(lat: &ClassedLattice<'_>) -> Result<SubgroupSet> {
    if !lat.is_full() {
        return Err(Error::NotInScope);
    }
    let t = lat.table();
    let mut mask = lat.subgroup(lat.top()).mask().clone();
    for &m in lat.maximal_subgroups() {
        mask = mask.intersect(lat.subgroup(m).mask());
    }
    SubgroupSet::from_mask(t, mask)
}

/// Whether the normal-closure series `G ⊵ K^G ⊵ K^(K^G) ⊵ …` ends at `k`.
pub fn is_subnormal(t: &GroupTable, k: &SubgroupSet) -> bool {
    let mut x = SubgroupSet::whole(t);
    loop {
        let y = normal_closure_in(t, k, &x);
        if y == x {
            return x == *k;
        }
        x = y;
    }
}

/// Heuristic isomorphism-type label from order and element-order profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureHint {
    Cyclic(usize),
    ElementaryAbelian { p: usize, k: usize },
    Abelian(usize),
    Dihedral(usize),
    Quaternion(usize),
    Other(usize),
}

impl StructureHint {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, StructureHint::Cyclic(_))
    }
}

impl fmt::Display for StructureHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureHint::Cyclic(n) => write!(f, "cyclic C{n}"),
            StructureHint::ElementaryAbelian { p, k } => write!(f, "elementary abelian {p}^{k}"),
            StructureHint::Abelian(_) => write!(f, "abelian"),
            StructureHint::Dihedral(n) => write!(f, "dihedral D{n}"),
            StructureHint::Quaternion(n) => write!(f, "quaternion Q{n}"),
            StructureHint::Other(n) => write!(f, "order-{n}"),
        }
    }
}

pub fn structure_hint(t: &GroupTable, h: &SubgroupSet) -> StructureHint {
    let n = h.order();
    let orders: Vec<usize> = h.elements().map(|g| t.element_order(g)).collect();
    if orders.contains(&n) {
        return StructureHint::Cyclic(n);
    }
    let abelian = is_abelian_subgroup(t, h);
    let primes = prime_factors(n);
    if abelian {
        if primes.len() == 1 && orders.iter().all(|&o| o == 1 || o == primes[0]) {
            let p = primes[0];
            let k = (n as f64).log(p as f64).round() as usize;
            return StructureHint::ElementaryAbelian { p, k };
        }
        return StructureHint::Abelian(n);
    }
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let has_half = n % 2 == 0 && orders.contains(&(n / 2));
    if has_half && involutions >= n / 2 {
        return StructureHint::Dihedral(n);
    }
    if has_half && primes == [2] && involutions == 1 {
        return StructureHint::Quaternion(n);
    }
    StructureHint::Other(n)
}

/// `|G : H|` for `H ≤ G` given as orders.
pub fn index(big: usize, small: usize) -> usize {
    debug_assert_eq!(big % small, 0);
    big / small
}

pub fn coprime(a: usize, b: usize) -> bool {
    gcd(a, b) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::GroupRecipe;
    use crate::lattice::all_subgroups;
    use crate::perm::Permutation;

    fn build(s: &str) -> GroupTable {
        s.parse::<GroupRecipe>().unwrap().build().unwrap()
    }

    fn sub(t: &GroupTable, cycles: &[&str]) -> SubgroupSet {
        let gens: Vec<usize> = cycles
            .iter()
            .map(|c| {
                t.index_of(&Permutation::parse_cycles(c, t.degree()).unwrap())
                    .unwrap()
            })
            .collect();
        SubgroupSet::generated(t, &gens)
    }

    fn orders(lat: &ClassedLattice<'_>, idx: &[usize]) -> Vec<usize> {
        let mut o: Vec<usize> = idx.iter().map(|&i| lat.subgroup(i).order()).collect();
        o.sort();
        o
    }

    #[test]
    fn max_over_examples() {
        let t = build("symmetric_4");
        let lat = all_subgroups(&t).unwrap();
        assert!(max_over(&lat, lat.top()).unwrap().is_empty());
        let c3 = lat.require(&sub(&t, &["(1,2,3)"])).unwrap();
        let over = max_over(&lat, c3).unwrap();
        assert_eq!(orders(&lat, &over), vec![6, 12]);
        assert!(over.contains(&lat.require(&sub(&t, &["(1,2)", "(1,2,3)"])).unwrap()));
        assert_eq!(max_over(&lat, 999), Err(Error::NotInScope));
    }

    #[test]
    fn two_maximal_examples() {
        let c6 = build("cyclic_6");
        let lat = all_subgroups(&c6).unwrap();
        assert!(is_2maximal(&lat, 0).unwrap().is_some());
        assert_eq!(is_2maximal(&lat, lat.top()), Err(Error::NotProper));

        let c5 = build("cyclic_5");
        let lat = all_subgroups(&c5).unwrap();
        assert_eq!(is_2maximal(&lat, 0).unwrap(), None);
        assert_eq!(is_strictly_2maximal(&lat, 0), Err(Error::NotTwoMaximal));
    }

    #[test]
    fn strictness_in_s4() {
        let t = build("symmetric_4");
        let lat = all_subgroups(&t).unwrap();
        let c3 = lat.require(&sub(&t, &["(1,2,3)"])).unwrap();
        assert_eq!(is_strictly_2maximal(&lat, c3).unwrap(), Strictness::Strict);
        let c2 = lat.require(&sub(&t, &["(1,2)"])).unwrap();
        match is_strictly_2maximal(&lat, c2).unwrap() {
            Strictness::NotStrict { witness } => assert_eq!(lat.subgroup(witness).order(), 8),
            Strictness::Strict => panic!("(1,2) is not maximal in its D8 overgroup"),
        }
    }

    #[test]
    fn degrees_of_trivial_in_cp2() {
        let t = build("cyclic_9");
        let lat = all_subgroups(&t).unwrap();
        let prof = maximality_degrees(&lat, 0).unwrap();
        assert_eq!(prof.degree_set(), BTreeSet::from([2]));
        assert!(prof.is_strictly_2max);
        assert_eq!(prof.degrees[&2].orders, vec![1, 3, 9]);
        assert!(prof.degrees[&2].is_valid(&lat));
    }

    #[test]
    fn max2_of_prime_order_is_empty() {
        let t = build("cyclic_7");
        let lat = all_subgroups(&t).unwrap();
        assert!(max2_sets(&lat).unwrap().max2.is_empty());
    }

    #[test]
    fn predicates_on_small_groups() {
        let d8 = build("dihedral_8");
        assert!(is_supersoluble(&d8) && is_nilpotent(&d8) && is_primary(&d8));
        let s4 = build("symmetric_4");
        assert!(is_soluble(&s4) && !is_supersoluble(&s4) && !is_nilpotent(&s4));
        assert_eq!(chief_factor_orders(&s4), vec![4, 3, 2]);
        let a9 = build("affine_9");
        assert!(is_soluble(&a9) && !is_supersoluble(&a9));
        let l8 = build("psl2_8");
        assert!(!is_soluble(&l8));
        for p in [2, 3, 7] {
            assert!(!is_p_soluble(&l8, p));
        }
        // A5 is 7-soluble: its only chief factor has order prime to 7
        assert!(is_p_soluble(&build("alternating_5"), 7));
    }

    #[test]
    fn distinguished_subgroups() {
        let s4 = build("symmetric_4");
        let lat = all_subgroups(&s4).unwrap();
        assert_eq!(frattini(&lat).unwrap().order(), 1);
        let v4 = sub(&s4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(fitting(&s4), v4);
        assert_eq!(o_p(&s4, 2), v4);
        assert_eq!(o_p(&s4, 3).order(), 1);
        assert_eq!(o_p_prime(&s4, 2).order(), 1);
        assert_eq!(minimal_normals(&s4), vec![v4]);
        assert_eq!(sylow(&s4, 2).order(), 8);
        assert_eq!(sylow(&s4, 3).order(), 3);
        assert_eq!(normal_subgroups(&s4).len(), 4);

        let d8 = build("dihedral_8");
        let lat = all_subgroups(&d8).unwrap();
        assert_eq!(lat.len(), 10);
        assert_eq!(frattini(&lat).unwrap().order(), 2);

        let l8 = build("psl2_8");
        assert_eq!(o_p(&l8, 2).order(), 1);
    }

    #[test]
    fn subnormality() {
        let s4 = build("symmetric_4");
        assert!(is_subnormal(&s4, &sub(&s4, &["(1,2)(3,4)", "(1,3)(2,4)"])));
        assert!(!is_subnormal(&s4, &sub(&s4, &["(1,2)"])));
        assert!(is_subnormal(&s4, &sub(&s4, &["(1,2)(3,4)"])));
        assert!(is_subnormal(&s4, &SubgroupSet::whole(&s4)));
    }

    #[test]
    fn hints() {
        let s4 = build("symmetric_4");
        let h = |c: &[&str]| structure_hint(&s4, &sub(&s4, c));
        assert_eq!(h(&["(1,2,3,4)"]), StructureHint::Cyclic(4));
        assert_eq!(
            h(&["(1,2)(3,4)", "(1,3)(2,4)"]),
            StructureHint::ElementaryAbelian { p: 2, k: 2 }
        );
        assert_eq!(h(&["(1,2)", "(1,3,2,4)"]), StructureHint::Dihedral(8));
        assert_eq!(h(&["(1,2)", "(1,2,3)"]), StructureHint::Dihedral(6));
        assert_eq!(h(&["(1,2,3)", "(1,2)(3,4)"]), StructureHint::Other(12));
        let q8 = build("quaternion8");
        assert_eq!(
            structure_hint(&q8, &SubgroupSet::whole(&q8)),
            StructureHint::Quaternion(8)
        );
        let c2c4 = build("direct_product(cyclic_2,cyclic_4)");
        assert_eq!(
            structure_hint(&c2c4, &SubgroupSet::whole(&c2c4)),
            StructureHint::Abelian(8)
        );
        assert_eq!(StructureHint::Dihedral(8).to_string(), "dihedral D8");
    }
}
