//! Subgroups as element bitmasks, the subgroup-level primitives (join, meet,
//! core, normalizer, quotient, …), and enumeration of subgroup lattices.
//!
//! Enumeration is a worklist join-closure: starting from the bottom of the
//! scope, each conjugacy-class representative is joined with every cyclic
//! subgroup of prime-power order until no new subgroup appears. Every subgroup
//! is generated by its cyclic subgroups of prime-power order, so the fixpoint
//! is complete; conjugation commutes with joins, so representatives suffice.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use rustc_hash::FxHashMap;

use crate::bits::Mask;
use crate::error::{Error, Result};
use crate::perm::{GroupTable, Permutation};

/// Default group-order budget for full lattice enumeration.
pub const DEFAULT_LATTICE_BUDGET: usize = 2600;

/// A subgroup of a fixed [`GroupTable`], stored as a membership mask with a
/// small generating set. Equality and hashing use the mask only.
#[derive(Clone)]
pub struct SubgroupSet {
    mask: Mask,
    order: usize,
    gens: Vec<u32>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask
    }
}

impl Eq for SubgroupSet {}

impl Hash for SubgroupSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mask.hash(state)
    }
}

impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order, &self.mask).cmp(&(other.order, &other.mask))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.gens)
    }
}

impl SubgroupSet {
    pub fn trivial(table: &GroupTable) -> Self {
        let mut mask = Mask::empty(table.order());
        mask.insert(0);
        SubgroupSet {
            mask,
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(table: &GroupTable) -> Self {
        SubgroupSet {
            mask: Mask::full(table.order()),
            order: table.order(),
            gens: table.generators().iter().map(|&g| g as u32).collect(),
        }
    }

    /// The subgroup generated by the given element indices.
    pub fn generated(table: &GroupTable, gens: &[usize]) -> Self {
        extend(table, &Self::trivial(table), gens, false)
    }

    /// Validates that `elements` form a subgroup and finds a small generating set.
    pub fn from_elements(table: &GroupTable, elements: &[usize]) -> Result<Self> {
        let mut mask = Mask::empty(table.order());
        for &e in elements {
            if e >= table.order() {
                return Err(Error::NotSubgroup);
            }
            mask.insert(e);
        }
        Self::from_mask(table, mask)
    }

    pub(crate) fn from_mask(table: &GroupTable, mask: Mask) -> Result<Self> {
        if !mask.contains(0) {
            return Err(Error::NotSubgroup);
        }
        let target = mask.count();
        let mut by_order: Vec<(usize, usize)> =
            mask.iter().map(|i| (table.element_order(i), i)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut cur = Self::trivial(table);
        for (_, i) in by_order {
            if cur.order == target {
                break;
            }
            if !cur.contains(i) {
                cur = extend(table, &cur, &[i], false);
                if !cur.mask.is_subset(&mask) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        if cur.order != target {
            return Err(Error::NotSubgroup);
        }
        Ok(cur)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mask(&self) -> &Mask {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter()
    }

    pub fn generators(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| g as usize).collect()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.order <= other.order
            && other.order % self.order == 0
            && self.mask.is_subset(&other.mask)
    }

    pub fn is_proper_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.order < other.order && self.is_subgroup_of(other)
    }

    /// Generators in 1-based cycle notation.
    pub fn generator_cycles(&self, table: &GroupTable) -> Vec<String> {
        if self.gens.is_empty() {
            return vec!["()".to_string()];
        }
        self.gens
            .iter()
            .map(|&g| table.element(g as usize).to_string())
            .collect()
    }

    pub fn generator_permutations<'t>(&self, table: &'t GroupTable) -> Vec<&'t Permutation> {
        self.gens
            .iter()
            .map(|&g| table.element(g as usize))
            .collect()
    }
}

/// Dimino-style extension of a subgroup by extra generators: the result is
/// enumerated as a union of right cosets of `base`. With `cutoff`, any result
/// larger than half the group is returned as the whole group.
pub(crate) fn extend(
    table: &GroupTable,
    base: &SubgroupSet,
    extra: &[usize],
    cutoff: bool,
) -> SubgroupSet {
    let fresh: Vec<usize> = extra
        .iter()
        .copied()
        .filter(|&g| !base.contains(g))
        .collect();
    if fresh.is_empty() {
        return base.clone();
    }
    let mut gens: Vec<u32> = base.gens.clone();
    for &g in &fresh {
        if !gens.contains(&(g as u32)) {
            gens.push(g as u32);
        }
    }
    let base_elems: Vec<usize> = base.elements().collect();
    let mut mask = base.mask.clone();
    let mut order = base.order;
    let mut reps = vec![0usize];
    let mut next = 0;
    let n = table.order();
    while next < reps.len() {
        let r = reps[next];
        next += 1;
        for &s in &gens {
            let x = table.product(r, s as usize);
            if mask.contains(x) {
                continue;
            }
            for &h in &base_elems {
                mask.insert(table.product(h, x));
            }
            order += base_elems.len();
            if cutoff && 2 * order > n {
                return SubgroupSet::whole(table);
            }
            reps.push(x);
        }
    }
    SubgroupSet { mask, order, gens }
}

/// The cyclic subgroup generated by element `g`.
pub fn cyclic(table: &GroupTable, g: usize) -> SubgroupSet {
    let mut mask = Mask::empty(table.order());
    mask.insert(0);
    let mut x = g;
    let mut order = 1;
    while x != 0 {
        mask.insert(x);
        order += 1;
        x = table.product(x, g);
    }
    SubgroupSet {
        mask,
        order,
        gens: if g == 0 { Vec::new() } else { vec![g as u32] },
    }
}

/// All distinct cyclic subgroups ⟨g⟩, including the trivial one, in element order.
pub fn cyclic_atoms(table: &GroupTable) -> Vec<SubgroupSet> {
    let mut seen: FxHashMap<Mask, ()> = FxHashMap::default();
    let mut out = Vec::new();
    for g in 0..table.order() {
        let c = cyclic(table, g);
        if seen.insert(c.mask.clone(), ()).is_none() {
            out.push(c);
        }
    }
    out
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn prime_power_atoms(table: &GroupTable) -> Vec<SubgroupSet> {
    let mut seen: FxHashMap<Mask, ()> = FxHashMap::default();
    let mut out = Vec::new();
    for g in 1..table.order() {
        if !is_prime_power(table.element_order(g)) {
            continue;
        }
        let c = cyclic(table, g);
        if seen.insert(c.mask.clone(), ()).is_none() {
            out.push(c);
        }
    }
    out
}

/// Smallest subgroup containing both.
pub fn join(table: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    if a.order >= b.order {
        extend(table, a, &b.generators(), false)
    } else {
        extend(table, b, &a.generators(), false)
    }
}

pub fn meet(table: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    SubgroupSet::from_mask(table, a.mask.intersect(&b.mask)).expect("intersection of subgroups")
}

/// The element set `AB = {ab}`.
#[derive(Debug, Clone)]
pub struct ProductSet {
    pub mask: Mask,
    pub size: usize,
    pub is_subgroup: bool,
}

impl ProductSet {
    pub fn into_subgroup(self, table: &GroupTable) -> Option<SubgroupSet> {
        self.is_subgroup
            .then(|| SubgroupSet::from_mask(table, self.mask).expect("closed product"))
    }
}

pub fn product_set(table: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> ProductSet {
    let mut ab = Mask::empty(table.order());
    let mut ba = Mask::empty(table.order());
    for x in a.elements() {
        for y in b.elements() {
            ab.insert(table.product(x, y));
            ba.insert(table.product(y, x));
        }
    }
    let size = ab.count();
    // AB is a subgroup iff AB = BA
    let is_subgroup = ab == ba;
    ProductSet {
        mask: ab,
        size,
        is_subgroup,
    }
}

fn conjugate_mask(table: &GroupTable, mask: &Mask, g: usize) -> Mask {
    let mut out = Mask::empty(table.order());
    for h in mask.iter() {
        out.insert(table.conjugate_element(h, g));
    }
    out
}

/// `g⁻¹ H g`.
pub fn conjugate(table: &GroupTable, h: &SubgroupSet, g: usize) -> SubgroupSet {
    SubgroupSet {
        mask: conjugate_mask(table, &h.mask, g),
        order: h.order,
        gens: h
            .gens
            .iter()
            .map(|&x| table.conjugate_element(x as usize, g) as u32)
            .collect(),
    }
}

/// Normal closure of `h` in the subgroup `within` (which must contain `h`).
pub fn normal_closure_in(table: &GroupTable, h: &SubgroupSet, within: &SubgroupSet) -> SubgroupSet {
    let mut cur = h.clone();
    let outer = within.generators();
    loop {
        let missing: Vec<usize> = cur
            .gens
            .iter()
            .flat_map(|&c| {
                outer
                    .iter()
                    .map(move |&s| table.conjugate_element(c as usize, s))
            })
            .filter(|&x| !cur.contains(x))
            .collect();
        if missing.is_empty() {
            return cur;
        }
        cur = extend(table, &cur, &missing, false);
    }
}

pub fn normal_closure(table: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    normal_closure_in(table, h, &SubgroupSet::whole(table))
}

/// Largest normal subgroup of G contained in `h`: the intersection of all conjugates.
pub fn core(table: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    let mut cur = h.mask.clone();
    loop {
        let mut next = cur.clone();
        for &s in table.generators() {
            next = next.intersect(&conjugate_mask(table, &cur, s));
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    SubgroupSet::from_mask(table, cur).expect("core is a subgroup")
}

pub fn is_normal(table: &GroupTable, h: &SubgroupSet) -> bool {
    is_normal_in(table, h, &SubgroupSet::whole(table))
}

pub fn is_normal_in(table: &GroupTable, h: &SubgroupSet, within: &SubgroupSet) -> bool {
    within.gens.iter().all(|&s| {
        h.gens
            .iter()
            .all(|&x| h.contains(table.conjugate_element(x as usize, s as usize)))
    })
}

pub fn normalizer(table: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    let mut mask = Mask::empty(table.order());
    for g in 0..table.order() {
        if h.gens
            .iter()
            .all(|&x| h.contains(table.conjugate_element(x as usize, g)))
        {
            mask.insert(g);
        }
    }
    SubgroupSet::from_mask(table, mask).expect("normalizer is a subgroup")
}

pub fn centralizer(table: &GroupTable, set: &[usize]) -> SubgroupSet {
    let mut mask = Mask::empty(table.order());
    for g in 0..table.order() {
        if set
            .iter()
            .all(|&s| table.product(g, s) == table.product(s, g))
        {
            mask.insert(g);
        }
    }
    SubgroupSet::from_mask(table, mask).expect("centralizer is a subgroup")
}

/// `G/N` acting on the cosets of `N`, together with the projection `G → G/N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: GroupTable,
    pub projection: Vec<u32>,
}

pub fn quotient(table: &GroupTable, n: &SubgroupSet) -> Result<Quotient> {
    if !is_normal(table, n) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![u32::MAX; table.order()];
    let mut reps = Vec::new();
    let n_elems: Vec<usize> = n.elements().collect();
    for g in 0..table.order() {
        if coset_of[g] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for &x in &n_elems {
            coset_of[table.product(x, g)] = id;
        }
        reps.push(g);
    }
    let degree = reps.len();
    // Ng ↦ N g s⁻¹ makes s ↦ action a homomorphism under right-to-left composition
    let action = |s: usize| -> Permutation {
        let s_inv = table.inverse(s);
        Permutation::from_images_unchecked(
            reps.iter()
                .map(|&r| coset_of[table.product(r, s_inv)])
                .collect(),
        )
    };
    let mut gens: Vec<Permutation> = table.generators().iter().map(|&s| action(s)).collect();
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    let qtable = GroupTable::generate(&gens)?;
    // g and g' project to the same coset action iff they share a coset
    let mut by_coset = vec![u32::MAX; degree];
    let projection = (0..table.order())
        .map(|g| {
            let c = coset_of[g] as usize;
            if by_coset[c] == u32::MAX {
                by_coset[c] = qtable.index_of(&action(g)).expect("image in quotient") as u32;
            }
            by_coset[c]
        })
        .collect();
    Ok(Quotient {
        table: qtable,
        projection,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Full,
    /// All subgroups containing the given subgroup (index into the lattice).
    Above(usize),
}

#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Subgroups in scope, partitioned into conjugacy classes, with the covering relation.
///
/// Subgroups are sorted by `(order, mask)` and classes by their representative,
/// which is the smallest member, so indices are reproducible across runs. In
/// interval scope conjugacy is taken under the normalizer of the bottom.
#[derive(Debug, Clone)]
pub struct ClassedLattice<'g> {
    table: &'g GroupTable,
    scope: Scope,
    subgroups: Vec<SubgroupSet>,
    lookup: FxHashMap<Mask, usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    acting: SubgroupSet,
}

struct Orbit {
    members: Vec<(SubgroupSet, usize)>,
}

fn conjugation_orbit(table: &GroupTable, start: SubgroupSet, acting: &[usize]) -> Orbit {
    let mut seen: FxHashMap<Mask, ()> = FxHashMap::default();
    seen.insert(start.mask.clone(), ());
    let mut members = vec![(start, 0usize)];
    let mut next = 0;
    while next < members.len() {
        let (h, t) = (members[next].0.clone(), members[next].1);
        next += 1;
        for &s in acting {
            let c = conjugate(table, &h, s);
            if seen.insert(c.mask.clone(), ()).is_none() {
                members.push((c, table.product(t, s)));
            }
        }
    }
    Orbit { members }
}

fn enumerate_above(
    table: &GroupTable,
    bottom: &SubgroupSet,
    acting: &SubgroupSet,
) -> (Vec<SubgroupSet>, Vec<usize>, Vec<usize>) {
    let atoms = prime_power_atoms(table);
    let acting_gens = acting.generators();
    let mut known: FxHashMap<Mask, usize> = FxHashMap::default();
    let mut subgroups: Vec<SubgroupSet> = Vec::new();
    // orbit id and conjugator-from-orbit-start, per subgroup
    let mut orbit_id: Vec<usize> = Vec::new();
    let mut conjugator: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    let mut orbits = 0;

    let mut add_orbit = |h: SubgroupSet,
                         known: &mut FxHashMap<Mask, usize>,
                         subgroups: &mut Vec<SubgroupSet>,
                         queue: &mut VecDeque<usize>| {
        let orbit = conjugation_orbit(table, h, &acting_gens);
        queue.push_back(subgroups.len());
        for (member, t) in orbit.members {
            known.insert(member.mask.clone(), subgroups.len());
            subgroups.push(member);
            orbit_id.push(orbits);
            conjugator.push(t);
        }
        orbits += 1;
    };

    add_orbit(bottom.clone(), &mut known, &mut subgroups, &mut queue);
    while let Some(rep) = queue.pop_front() {
        let h = subgroups[rep].clone();
        for atom in &atoms {
            if atom.mask.is_subset(&h.mask) {
                continue;
            }
            let j = extend(table, &h, &atom.generators(), true);
            if !known.contains_key(&j.mask) {
                add_orbit(j, &mut known, &mut subgroups, &mut queue);
            }
        }
    }
    (subgroups, orbit_id, conjugator)
}

impl<'g> ClassedLattice<'g> {
    fn assemble(
        table: &'g GroupTable,
        bottom: &SubgroupSet,
        acting: SubgroupSet,
        full: bool,
    ) -> Self {
        let (raw, orbit_id, conjugator) = enumerate_above(table, bottom, &acting);
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let mut new_index = vec![0usize; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let subgroups: Vec<SubgroupSet> = order.iter().map(|&i| raw[i].clone()).collect();
        let lookup: FxHashMap<Mask, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.mask.clone(), i))
            .collect();

        // group members by orbit; representative = smallest member
        let orbit_count = orbit_id.iter().max().map_or(0, |m| m + 1);
        let mut orbit_members: Vec<Vec<usize>> = vec![Vec::new(); orbit_count];
        for old in 0..raw.len() {
            orbit_members[orbit_id[old]].push(old);
        }
        // transversal relative to each class representative
        let mut transversal = vec![0usize; raw.len()];
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        for members in orbit_members {
            let rep_old = *members.iter().min_by_key(|&&m| new_index[m]).unwrap();
            let back = table.inverse(conjugator[rep_old]);
            for &m in &members {
                transversal[new_index[m]] = table.product(back, conjugator[m]);
            }
            let mut ms: Vec<usize> = members.iter().map(|&m| new_index[m]).collect();
            ms.sort_unstable();
            classes.push(ConjugacyClass {
                representative: ms[0],
                members: ms,
            });
        }
        classes.sort_by_key(|c| c.representative);
        let mut class_of = vec![0usize; subgroups.len()];
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = ci;
            }
        }

        // covering relation: maximal subgroups of each representative, transported
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); subgroups.len()];
        for c in &classes {
            let b = &subgroups[c.representative];
            let mut maximal: Vec<usize> = Vec::new();
            for a in (0..c.representative).rev() {
                let cand = &subgroups[a];
                if cand.order == b.order
                    || b.order % cand.order != 0
                    || !cand.mask.is_subset(&b.mask)
                {
                    continue;
                }
                if maximal.iter().all(|&m| !cand.is_subgroup_of(&subgroups[m])) {
                    maximal.push(a);
                }
            }
            for &member in &c.members {
                let t = transversal[member];
                let mut images: Vec<usize> = maximal
                    .iter()
                    .map(|&a| {
                        if member == c.representative {
                            a
                        } else {
                            lookup[&conjugate_mask(table, &subgroups[a].mask, t)]
                        }
                    })
                    .collect();
                images.sort_unstable();
                lower[member] = images;
            }
        }
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); subgroups.len()];
        for (b, below) in lower.iter().enumerate() {
            for &a in below {
                upper[a].push(b);
            }
        }
        let scope = if full { Scope::Full } else { Scope::Above(0) };
        ClassedLattice {
            table,
            scope,
            subgroups,
            lookup,
            class_of,
            classes,
            lower,
            upper,
            acting,
        }
    }

    pub fn table(&self) -> &'g GroupTable {
        self.table
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn is_full(&self) -> bool {
        self.scope == Scope::Full
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &SubgroupSet) -> Option<usize> {
        self.lookup.get(&h.mask).copied()
    }

    /// Index of the bottom of the scope (trivial subgroup in full scope).
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of G itself.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn representative_of(&self, i: usize) -> usize {
        self.classes[self.class_of[i]].representative
    }

    /// The group whose conjugation action defines the classes.
    pub fn acting_group(&self) -> &SubgroupSet {
        &self.acting
    }

    /// Subgroups in scope that are maximal in `b`.
    pub fn maximal_in(&self, b: usize) -> &[usize] {
        &self.lower[b]
    }

    /// Subgroups in scope in which `a` is maximal.
    pub fn covers_of(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    /// Whether `a` is maximal in `b`.
    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.lower[b].binary_search(&a).is_ok()
    }

    /// All covering pairs `(a, b)` with `a` maximal in `b`, in index order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lower
            .iter()
            .enumerate()
            .flat_map(|(b, below)| below.iter().map(move |&a| (a, b)))
    }

    /// Indices of the subgroups in scope containing `h`.
    pub fn above(&self, h: usize) -> Vec<usize> {
        let s = &self.subgroups[h];
        (h..self.len())
            .filter(|&k| s.is_subgroup_of(&self.subgroups[k]))
            .collect()
    }

    /// Maximal subgroups of G.
    pub fn maximal_subgroups(&self) -> &[usize] {
        &self.lower[self.top()]
    }

    /// Conjugacy-class representatives of the subgroups maximal in G.
    pub fn maximal_class_reps(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = self
            .maximal_subgroups()
            .iter()
            .map(|&m| self.representative_of(m))
            .collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// Members of the class of `i` intersected: in full scope this is the core.
    pub fn class_core(&self, i: usize) -> SubgroupSet {
        let c = &self.classes[self.class_of[i]];
        let mut mask = self.subgroups[c.members[0]].mask.clone();
        for &m in &c.members[1..] {
            mask = mask.intersect(&self.subgroups[m].mask);
        }
        if let Some(&j) = self.lookup.get(&mask) {
            return self.subgroups[j].clone();
        }
        SubgroupSet::from_mask(self.table, mask).expect("intersection of subgroups")
    }

    /// Core of subgroup `i` in G. Uses the class in full scope.
    pub fn core_of(&self, i: usize) -> SubgroupSet {
        match self.scope {
            Scope::Full => self.class_core(i),
            Scope::Above(_) => core(self.table, &self.subgroups[i]),
        }
    }

    /// Whether subgroup `i` is normal in G.
    pub fn is_normal(&self, i: usize) -> bool {
        match self.scope {
            Scope::Full => self.classes[self.class_of[i]].members.len() == 1,
            Scope::Above(_) => is_normal(self.table, &self.subgroups[i]),
        }
    }

    /// Index of a subgroup given as a mask-equal [`SubgroupSet`].
    pub fn require(&self, h: &SubgroupSet) -> Result<usize> {
        self.index_of(h).ok_or(Error::NotInScope)
    }
}

/// Full subgroup lattice with the default budget.
pub fn all_subgroups(table: &GroupTable) -> Result<ClassedLattice<'_>> {
    all_subgroups_with_budget(table, DEFAULT_LATTICE_BUDGET)
}

pub fn all_subgroups_with_budget(table: &GroupTable, budget: usize) -> Result<ClassedLattice<'_>> {
    if table.order() > budget {
        return Err(Error::BudgetExceeded {
            order: table.order(),
            budget,
        });
    }
    Ok(ClassedLattice::assemble(
        table,
        &SubgroupSet::trivial(table),
        SubgroupSet::whole(table),
        true,
    ))
}

/// The interval of all subgroups containing `h`, classed under `N_G(h)`.
pub fn overgroups<'g>(table: &'g GroupTable, h: &SubgroupSet) -> Result<ClassedLattice<'g>> {
    let checked = SubgroupSet::from_mask(table, h.mask.clone())?;
    if checked.order != h.order {
        return Err(Error::NotSubgroup);
    }
    let acting = normalizer(table, h);
    Ok(ClassedLattice::assemble(table, h, acting, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::GroupRecipe;

    fn s4() -> GroupTable {
        GroupRecipe::Symmetric(4).build().unwrap()
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

    #[test]
    fn cyclic_atom_counts() {
        let c6 = GroupRecipe::Cyclic(6).build().unwrap();
        assert_eq!(cyclic_atoms(&c6).len(), 4);
        let s3 = GroupRecipe::Symmetric(3).build().unwrap();
        assert_eq!(cyclic_atoms(&s3).len(), 5);
        let q8 = GroupRecipe::Quaternion8.build().unwrap();
        let mut orders: Vec<usize> = cyclic_atoms(&q8).iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4, 4]);
    }

    #[test]
    fn join_examples() {
        let s3 = GroupRecipe::Symmetric(3).build().unwrap();
        let a = sub(&s3, &["(1,2)"]);
        let b = sub(&s3, &["(2,3)"]);
        assert_eq!(join(&s3, &a, &b).order(), 6);
        assert_eq!(join(&s3, &a, &a), a);
        assert_eq!(join(&s3, &SubgroupSet::trivial(&s3), &a), a);
    }

    #[test]
    fn meet_and_product() {
        let t = s4();
        let s3 = sub(&t, &["(1,2)", "(1,2,3)"]);
        let d8 = sub(&t, &["(1,2)", "(1,3,2,4)"]);
        assert_eq!(d8.order(), 8);
        let k = meet(&t, &s3, &d8);
        assert_eq!(k, sub(&t, &["(1,2)"]));
        let v4 = sub(&t, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let ps = product_set(&t, &v4, &sub(&t, &["(1,2)"]));
        assert_eq!(ps.size, 8);
        assert!(ps.is_subgroup);
        assert!(!product_set(&t, &sub(&t, &["(1,2)"]), &sub(&t, &["(2,3)"])).is_subgroup);
        assert_eq!(meet(&t, &s3, &SubgroupSet::whole(&t)), s3);
    }

    #[test]
    fn core_examples() {
        let t = s4();
        let a4 = sub(&t, &["(1,2,3)", "(1,2)(3,4)"]);
        assert_eq!(core(&t, &a4), a4);
        assert_eq!(core(&t, &sub(&t, &["(1,2)", "(1,2,3)"])).order(), 1);
        let d8 = sub(&t, &["(1,2)", "(1,3,2,4)"]);
        assert_eq!(core(&t, &d8), sub(&t, &["(1,2)(3,4)", "(1,3)(2,4)"]));
    }

    #[test]
    fn normalizer_and_centralizer() {
        let s3 = GroupRecipe::Symmetric(3).build().unwrap();
        assert_eq!(normalizer(&s3, &sub(&s3, &["(1,2,3)"])).order(), 6);
        let t = s4();
        let g = t
            .index_of(&Permutation::parse_cycles("(1,2,3)", 4).unwrap())
            .unwrap();
        assert_eq!(centralizer(&t, &[g]), sub(&t, &["(1,2,3)"]));
        assert_eq!(normalizer(&t, &SubgroupSet::whole(&t)).order(), 24);
    }

    #[test]
    fn quotient_examples() {
        let t = s4();
        let v4 = sub(&t, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let q = quotient(&t, &v4).unwrap();
        assert_eq!(q.table.order(), 6);
        assert_eq!(q.table.degree(), 6);
        let nonabelian =
            (0..6).any(|a| (0..6).any(|b| q.table.product(a, b) != q.table.product(b, a)));
        assert!(nonabelian);
        for a in 0..24 {
            for b in 0..24 {
                let lhs = q.projection[t.product(a, b)] as usize;
                let rhs = q
                    .table
                    .product(q.projection[a] as usize, q.projection[b] as usize);
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(
            quotient(&t, &SubgroupSet::whole(&t)).unwrap().table.order(),
            1
        );
        assert_eq!(
            quotient(&t, &SubgroupSet::trivial(&t))
                .unwrap()
                .table
                .order(),
            24
        );
        assert_eq!(
            quotient(&t, &sub(&t, &["(1,2)"])).unwrap_err(),
            Error::NotNormal
        );
    }

    #[test]
    fn s4_lattice_shape() {
        let t = s4();
        let lat = all_subgroups(&t).unwrap();
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.classes().len(), 11);
        assert_eq!(lat.subgroup(lat.bottom()).order(), 1);
        assert_eq!(lat.subgroup(lat.top()).order(), 24);
        let mut max_orders: Vec<usize> = lat
            .maximal_subgroups()
            .iter()
            .map(|&m| lat.subgroup(m).order())
            .collect();
        max_orders.sort();
        assert_eq!(max_orders, vec![6, 6, 6, 6, 8, 8, 8, 12]);
    }

    #[test]
    fn interval_above_three_cycle() {
        let t = s4();
        let c3 = sub(&t, &["(1,2,3)"]);
        let iv = overgroups(&t, &c3).unwrap();
        let orders: Vec<usize> = iv.subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![3, 6, 12, 24]);
        let whole = overgroups(&t, &SubgroupSet::whole(&t)).unwrap();
        assert_eq!(whole.len(), 1);
    }

    #[test]
    fn from_elements_rejects_non_subgroups() {
        let t = s4();
        let a = t
            .index_of(&Permutation::parse_cycles("(1,2)", 4).unwrap())
            .unwrap();
        let b = t
            .index_of(&Permutation::parse_cycles("(2,3)", 4).unwrap())
            .unwrap();
        assert_eq!(
            SubgroupSet::from_elements(&t, &[0, a, b]).unwrap_err(),
            Error::NotSubgroup
        );
        assert_eq!(
            SubgroupSet::from_elements(&t, &[a]).unwrap_err(),
            Error::NotSubgroup
        );
        assert_eq!(SubgroupSet::from_elements(&t, &[0, a]).unwrap().order(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let t = s4();
        assert_eq!(
            all_subgroups_with_budget(&t, 10).unwrap_err(),
            Error::BudgetExceeded {
                order: 24,
                budget: 10
            }
        );
    }
}
