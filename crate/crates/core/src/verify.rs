//! Executable checks of the structural statements about 2-maximal and
//! strictly 2-maximal subgroups, run over concrete groups.
//!
//! Every claim checked here is invariant under conjugation, so checkers
//! quantify over conjugacy-class representatives of the subgroup playing the
//! leading role (K, H or M) and scan the rest exhaustively.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    is_2maximal, is_primary_order, is_strictly_2maximal, is_subnormal, is_supersoluble, max2_sets,
    max_over, prime_factors, Strictness,
};
use crate::constructions::GroupRecipe;
use crate::error::{Error, Result};
use crate::lattice::{
    all_subgroups_with_budget, cyclic, meet, overgroups, product_set, quotient, ClassedLattice,
    SubgroupSet, DEFAULT_LATTICE_BUDGET,
};
use crate::perm::{GroupTable, Permutation};

pub mod checker {
    pub const STRICT_EXISTS: &str = "strict-2max-exists";
    pub const PRIME_INDEX_CHAINS: &str = "prime-index-chains";
    pub const PRIME_INDEX_CORE_QUOTIENT: &str = "prime-index-core-quotient";
    pub const MIXED_MAXIMALITY: &str = "mixed-maximality";
    pub const CORE_SEPARATION: &str = "core-separation";
    pub const UNIQUE_NON_COVERING: &str = "unique-non-covering";
    pub const PRIME_INDEX_MAXIMALS: &str = "prime-index-maximals";
    pub const SUBNORMAL_MIXED: &str = "subnormal-mixed";
    pub const CORPUS: &str = "corpus";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    /// The group could not be analysed (construction or budget failure).
    Error,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not_applicable",
            Outcome::Error => "error",
        })
    }
}

/// A subgroup chain with orders and generators, bottom first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub orders: Vec<usize>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub checker: String,
    pub group: String,
    pub instances: usize,
    pub outcome: Outcome,
    pub witnesses: Vec<Witness>,
    /// Which clause each witness violated; not part of the JSON document.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl VerdictReport {
    fn error(checker: &str, group: &str, err: &Error) -> Self {
        VerdictReport {
            checker: checker.to_string(),
            group: group.to_string(),
            instances: 0,
            outcome: Outcome::Error,
            witnesses: Vec::new(),
            notes: vec![err.to_string()],
        }
    }
}

struct Tally<'a, 'g> {
    lat: &'a ClassedLattice<'g>,
    checker: &'static str,
    instances: usize,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
}

impl<'a, 'g> Tally<'a, 'g> {
    fn new(lat: &'a ClassedLattice<'g>, checker: &'static str) -> Self {
        Tally {
            lat,
            checker,
            instances: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one instance; on failure stores the chain as a witness.
    fn assert(&mut self, ok: bool, chain: &[&SubgroupSet], what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            let t = self.lat.table();
            self.witnesses.push(Witness {
                orders: chain.iter().map(|s| s.order()).collect(),
                generators: chain.iter().map(|s| s.generator_cycles(t)).collect(),
            });
            self.notes.push(what());
        }
    }

    fn finish(self, group: &str) -> VerdictReport {
        let outcome = if self.instances == 0 {
            Outcome::NotApplicable
        } else if self.witnesses.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        VerdictReport {
            checker: self.checker.to_string(),
            group: group.to_string(),
            instances: self.instances,
            outcome,
            witnesses: self.witnesses,
            notes: self.notes,
        }
    }
}

/// A group together with its full subgroup lattice and cached predicates.
pub struct Analysis<'g> {
    pub name: String,
    pub lattice: ClassedLattice<'g>,
    pub soluble: bool,
    pub supersoluble: bool,
    chief_factors: Vec<usize>,
}

impl<'g> Analysis<'g> {
    pub fn new(name: impl Into<String>, table: &'g GroupTable, budget: usize) -> Result<Self> {
        let lattice = all_subgroups_with_budget(table, budget)?;
        let chief_factors = crate::classify::chief_factor_orders(table);
        Ok(Analysis {
            name: name.into(),
            soluble: crate::classify::is_soluble(table),
            supersoluble: chief_factors.iter().all(|&f| crate::classify::is_prime(f)),
            chief_factors,
            lattice,
        })
    }

    pub fn table(&self) -> &'g GroupTable {
        self.lattice.table()
    }

    fn order(&self) -> usize {
        self.table().order()
    }

    fn is_p_soluble(&self, p: usize) -> bool {
        self.chief_factors
            .iter()
            .all(|&f| f % p != 0 || prime_factors(f) == [p])
    }

    fn sub(&self, i: usize) -> &SubgroupSet {
        self.lattice.subgroup(i)
    }

    fn two_max_reps(&self) -> Vec<usize> {
        let lat = &self.lattice;
        lat.classes()
            .iter()
            .map(|c| c.representative)
            .filter(|&r| r != lat.top() && matches!(is_2maximal(lat, r), Ok(Some(_))))
            .collect()
    }

    fn is_strict(&self, k: usize) -> bool {
        matches!(
            is_strictly_2maximal(&self.lattice, k),
            Ok(Strictness::Strict)
        )
    }
}

/// Max₂*(G) is nonempty whenever |G| is neither 1 nor prime, and a 2-maximal
/// subgroup of least index is strictly 2-maximal.
pub fn check_strict_exists(a: &Analysis<'_>) -> VerdictReport {
    let lat = &a.lattice;
    let mut tally = Tally::new(lat, checker::STRICT_EXISTS);
    let n = a.order();
    if n == 1 || crate::classify::is_prime(n) {
        return tally.finish(&a.name);
    }
    let top = a.sub(lat.top());
    let sets = max2_sets(lat).expect("full lattice");
    tally.assert(!sets.strict.is_empty(), &[top], || "Max2* is empty".into());
    let reps = a.two_max_reps();
    if let Some(best) = reps.iter().map(|&r| a.sub(r).order()).max() {
        for &r in reps.iter().filter(|&&r| a.sub(r).order() == best) {
            let strict = is_strictly_2maximal(lat, r);
            let chain = match strict {
                Ok(Strictness::NotStrict { witness }) => vec![a.sub(r), a.sub(witness), top],
                _ => vec![a.sub(r), top],
            };
            tally.assert(strict == Ok(Strictness::Strict), &chain, || {
                "least-index 2-maximal subgroup is not strictly 2-maximal".into()
            });
        }
    }
    tally.finish(&a.name)
}

/// If H ⋖ M ⋖ G with both indices prime then H is strictly 2-maximal; in a
/// supersoluble group every 2-maximal subgroup is strictly 2-maximal.
pub fn check_prime_index_chains(a: &Analysis<'_>) -> VerdictReport {
    let lat = &a.lattice;
    let mut tally = Tally::new(lat, checker::PRIME_INDEX_CHAINS);
    let top = a.sub(lat.top());
    for m in lat.maximal_class_reps() {
        if !crate::classify::is_prime(a.order() / a.sub(m).order()) {
            continue;
        }
        for &h in lat.maximal_in(m) {
            if !crate::classify::is_prime(a.sub(m).order() / a.sub(h).order()) {
                continue;
            }
            tally.assert(a.is_strict(h), &[a.sub(h), a.sub(m), top], || {
                "prime-index chain endpoint is not strictly 2-maximal".into()
            });
        }
    }
    if a.supersoluble && a.order() > 1 {
        let sets = max2_sets(lat).expect("full lattice");
        let first_bad = sets.max2.iter().find(|r| !sets.strict.contains(r));
        let chain: Vec<&SubgroupSet> = match first_bad {
            Some(&r) => vec![a.sub(r), top],
            None => vec![top],
        };
        tally.assert(sets.all_strict(), &chain, || {
            "supersoluble group with Max2 != Max2*".into()
        });
    }
    tally.finish(&a.name)
}

/// In a p-soluble group, a subgroup H of index p has G/H_G supersoluble.
pub fn check_prime_index_core_quotient(a: &Analysis<'_>) -> VerdictReport {
    let lat = &a.lattice;
    let t = a.table();
    let mut tally = Tally::new(lat, checker::PRIME_INDEX_CORE_QUOTIENT);
    for p in prime_factors(a.order()) {
        if !a.is_p_soluble(p) {
            continue;
        }
        for class in lat.classes() {
            let h = class.representative;
            if a.order() / a.sub(h).order() != p {
                continue;
            }
            let n = lat.core_of(h);
            let ok = quotient(t, &n)
                .map(|q| is_supersoluble(&q.table))
                .unwrap_or(false);
            tally.assert(ok, &[&n, a.sub(h), a.sub(lat.top())], || {
                format!("G/core(H) not supersoluble for |G:H| = {p}")
            });
        }
    }
    tally.finish(&a.name)
}

/// Assertions for one subgroup K against every (M, H) pair of maximal
/// subgroups with K maximal in M and not maximal in H.
fn mixed_maximality_for(
    lat: &ClassedLattice<'_>,
    k: usize,
    soluble: bool,
    tally: &mut Tally<'_, '_>,
) {
    let t = lat.table();
    let Ok(over) = max_over(lat, k) else { return };
    let (covering, non_covering): (Vec<usize>, Vec<usize>) =
        over.into_iter().partition(|&m| lat.is_cover(k, m));
    if covering.is_empty() || non_covering.is_empty() {
        return;
    }
    let ks = lat.subgroup(k);
    let core_k = lat.core_of(k);
    let top = lat.subgroup(lat.top());
    for &m in &covering {
        let ms = lat.subgroup(m);
        let core_m = lat.core_of(m);
        for &h in &non_covering {
            let hs = lat.subgroup(h);
            let core_h = lat.core_of(h);
            tally.assert(meet(t, ms, hs) == *ks, &[ks, ms, top], || {
                "K != M ∩ H".into()
            });
            tally.assert(
                core_k == core_m && core_m.order() < ms.order(),
                &[&core_k, ks, ms, top],
                || "K_G = M_G < M fails".into(),
            );
            let product = product_set(t, ks, &core_h);
            tally.assert(
                core_k == core_h || (product.is_subgroup && product.mask == *hs.mask()),
                &[ks, &core_h, hs, top],
                || "neither K_G = H_G nor K H_G = H".into(),
            );
            if soluble {
                tally.assert(non_covering.len() == 1, &[ks, hs, top], || {
                    "more than one maximal overgroup fails to cover K".into()
                });
                tally.assert(
                    core_k == core_m && core_m.is_proper_subgroup_of(&core_h),
                    &[&core_m, &core_h, hs, top],
                    || "K_G = M_G < H_G fails".into(),
                );
                tally.assert(
                    product.is_subgroup && product.mask == *hs.mask(),
                    &[ks, &core_h, hs, top],
                    || "K H_G != H".into(),
                );
            }
        }
    }
}

/// For maximal M, H with K maximal in M but not in H: K = M ∩ H,
/// K_G = M_G < M, and K_G = H_G or K·H_G = H; if G is soluble, H is the only
/// such maximal overgroup, M_G < H_G and K·H_G = H.
pub fn check_mixed_maximality(a: &Analysis<'_>) -> VerdictReport {
    let mut tally = Tally::new(&a.lattice, checker::MIXED_MAXIMALITY);
    for k in a.two_max_reps() {
        mixed_maximality_for(&a.lattice, k, a.soluble, &mut tally);
    }
    tally.finish(&a.name)
}

/// The same assertions for the bottom subgroup of an interval lattice.
pub fn check_mixed_maximality_interval(
    name: &str,
    interval: &ClassedLattice<'_>,
    soluble: bool,
) -> VerdictReport {
    let mut tally = Tally::new(interval, checker::MIXED_MAXIMALITY);
    let k = interval.bottom();
    if k != interval.top() {
        mixed_maximality_for(interval, k, soluble, &mut tally);
    }
    tally.finish(name)
}

/// Uniqueness of the non-covering maximal overgroup for the bottom of an
/// interval; only applicable in soluble groups.
pub fn check_unique_non_covering_interval(
    name: &str,
    interval: &ClassedLattice<'_>,
    soluble: bool,
) -> VerdictReport {
    let mut tally = Tally::new(interval, checker::UNIQUE_NON_COVERING);
    let k = interval.bottom();
    if soluble && k != interval.top() {
        unique_non_covering_for(interval, k, &mut tally);
    }
    tally.finish(name)
}

fn unique_non_covering_for(lat: &ClassedLattice<'_>, k: usize, tally: &mut Tally<'_, '_>) {
    if !matches!(
        is_strictly_2maximal(lat, k),
        Ok(Strictness::NotStrict { .. })
    ) {
        return;
    }
    let non: Vec<usize> = max_over(lat, k)
        .unwrap_or_default()
        .into_iter()
        .filter(|&v| !lat.is_cover(k, v))
        .collect();
    let top = lat.subgroup(lat.top());
    let mut chain = vec![lat.subgroup(k)];
    chain.extend(non.iter().map(|&v| lat.subgroup(v)));
    chain.push(top);
    tally.assert(non.len() == 1, &chain, || {
        format!("{} maximal overgroups fail to cover K", non.len())
    });
}

/// The four consequences: core separation, uniqueness of the non-covering
/// overgroup in soluble groups, maximals of prime-index subgroups in
/// p-soluble groups, and the structure forced by a subnormal K.
pub fn check_corollaries(a: &Analysis<'_>) -> Vec<VerdictReport> {
    vec![
        check_core_separation(a),
        check_unique_non_covering(a),
        check_prime_index_maximals(a),
        check_subnormal_mixed(a),
    ]
}

/// K ⋖ M ⋖ G with K_G ≠ M_G forces K strictly 2-maximal (in particular when M ⊴ G).
pub fn check_core_separation(a: &Analysis<'_>) -> VerdictReport {
    let lat = &a.lattice;
    let mut tally = Tally::new(lat, checker::CORE_SEPARATION);
    for m in lat.maximal_class_reps() {
        let core_m = lat.core_of(m);
        for &k in lat.maximal_in(m) {
            if lat.core_of(k) == core_m {
                continue;
            }
            tally.assert(
                a.is_strict(k),
                &[a.sub(k), a.sub(m), a.sub(lat.top())],
                || "K_G != M_G but K is not strictly 2-maximal".into(),
            );
        }
    }
    tally.finish(&a.name)
}

/// In a soluble group, a 2-maximal K that is not strictly 2-maximal has
/// exactly one maximal overgroup in which it is not maximal.
pub fn check_unique_non_covering(a: &Analysis<'_>) -> VerdictReport {
    let mut tally = Tally::new(&a.lattice, checker::UNIQUE_NON_COVERING);
    if a.soluble {
        for k in a.two_max_reps() {
            unique_non_covering_for(&a.lattice, k, &mut tally);
        }
    }
    tally.finish(&a.name)
}

/// In a p-soluble group, every maximal subgroup of a subgroup of index p is
/// strictly 2-maximal.
pub fn check_prime_index_maximals(a: &Analysis<'_>) -> VerdictReport {
    let lat = &a.lattice;
    let mut tally = Tally::new(lat, checker::PRIME_INDEX_MAXIMALS);
    for p in prime_factors(a.order()) {
        if !a.is_p_soluble(p) {
            continue;
        }
        for m in lat.maximal_class_reps() {
            if a.order() / a.sub(m).order() != p {
                continue;
            }
            for &k in lat.maximal_in(m) {
                tally.assert(
                    a.is_strict(k),
                    &[a.sub(k), a.sub(m), a.sub(lat.top())],
                    || {
                        format!(
                            "maximal subgroup of an index-{p} subgroup is not strictly 2-maximal"
                        )
                    },
                );
            }
        }
    }
    tally.finish(&a.name)
}

/// A subnormal K, maximal in a maximal M and not maximal in a maximal H,
/// equals M_G, and G/K = H/K : M/K is a nonprimary nonsupersoluble group all
/// of whose proper subgroups are primary.
pub fn check_subnormal_mixed(a: &Analysis<'_>) -> VerdictReport {
    let lat = &a.lattice;
    let t = a.table();
    let mut tally = Tally::new(lat, checker::SUBNORMAL_MIXED);
    let top = a.sub(lat.top());
    for k in a.two_max_reps() {
        let over = max_over(lat, k).unwrap_or_default();
        let (covering, non): (Vec<usize>, Vec<usize>) =
            over.into_iter().partition(|&m| lat.is_cover(k, m));
        if covering.is_empty() || non.is_empty() || !is_subnormal(t, a.sub(k)) {
            continue;
        }
        let ks = a.sub(k);
        for &m in &covering {
            tally.assert(lat.core_of(m) == *ks, &[ks, a.sub(m), top], || {
                "K != M_G".into()
            });
            for &h in &non {
                let hs = a.sub(h);
                tally.assert(
                    lat.is_normal(h)
                        && meet(t, hs, a.sub(m)) == *ks
                        && hs.order() * a.sub(m).order() == ks.order() * a.order(),
                    &[ks, a.sub(m), hs, top],
                    || "G/K is not H/K : M/K".into(),
                );
            }
        }
        let q = match quotient(t, ks) {
            Ok(q) => q,
            Err(_) => {
                tally.assert(false, &[ks, top], || "K is not normal".into());
                continue;
            }
        };
        tally.assert(!is_primary_order(q.table.order()), &[ks, top], || {
            "G/K is primary".into()
        });
        tally.assert(!is_supersoluble(&q.table), &[ks, top], || {
            "G/K is supersoluble".into()
        });
        let proper_primary = match all_subgroups_with_budget(&q.table, usize::MAX) {
            Ok(ql) => ql
                .subgroups()
                .iter()
                .take(ql.len() - 1)
                .all(|s| is_primary_order(s.order())),
            Err(_) => false,
        };
        tally.assert(proper_primary, &[ks, top], || {
            "G/K has a proper subgroup that is not primary".into()
        });
    }
    tally.finish(&a.name)
}

/// All full-lattice checkers, in a fixed order.
pub fn check_all(a: &Analysis<'_>) -> Vec<VerdictReport> {
    let mut out = vec![
        check_strict_exists(a),
        check_prime_index_chains(a),
        check_prime_index_core_quotient(a),
        check_mixed_maximality(a),
    ];
    out.extend(check_corollaries(a));
    out
}

/// How the bottom of an interval-mode analysis is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalSeed {
    /// The cyclic subgroup of the first element of this order.
    FirstOfOrder(usize),
    /// The subgroup generated by these cycle-notation generators.
    Generators(Vec<String>),
}

impl IntervalSeed {
    pub fn resolve(&self, t: &GroupTable) -> Result<SubgroupSet> {
        match self {
            IntervalSeed::FirstOfOrder(k) => (0..t.order())
                .find(|&g| t.element_order(g) == *k)
                .map(|g| cyclic(t, g))
                .ok_or_else(|| Error::InvalidRecipe(format!("no element of order {k}"))),
            IntervalSeed::Generators(gens) => {
                let idx = gens
                    .iter()
                    .map(|g| {
                        let p = Permutation::parse_cycles(g, t.degree())?;
                        t.index_of(&p)
                            .ok_or_else(|| Error::InvalidRecipe(format!("{g} is not in the group")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SubgroupSet::generated(t, &idx))
            }
        }
    }
}

impl fmt::Display for IntervalSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalSeed::FirstOfOrder(k) => write!(f, "order={k}"),
            IntervalSeed::Generators(g) => write!(f, "{}", g.join(" ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub recipe: GroupRecipe,
    /// Analyse only the interval above this subgroup instead of the full lattice.
    pub above: Option<IntervalSeed>,
}

impl CorpusEntry {
    pub fn full(recipe: GroupRecipe) -> Self {
        CorpusEntry {
            recipe,
            above: None,
        }
    }

    pub fn name(&self) -> String {
        match &self.above {
            None => self.recipe.to_string(),
            Some(seed) => format!("{} above {seed}", self.recipe),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub lattice_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lattice_budget: DEFAULT_LATTICE_BUDGET,
        }
    }
}

/// The built-in corpus.
pub fn default_corpus() -> Vec<CorpusEntry> {
    use GroupRecipe::*;
    let mut recipes: Vec<GroupRecipe> = Vec::new();
    recipes.extend((1..=32).map(Cyclic));
    recipes.extend((2..=40).step_by(2).map(Dihedral));
    recipes.extend((1..=5).map(Symmetric));
    recipes.extend((1..=6).map(Alternating));
    recipes.push(Quaternion8);
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23] {
        for k in 1..=5 {
            if p.pow(k) <= 27 {
                recipes.push(ElementaryAbelian { p, k });
            }
        }
    }
    recipes.extend([4, 5, 7, 8, 9, 16, 25].map(Affine));
    recipes.push(GroupRecipe::u3_2_model());
    recipes.extend([4, 5, 7, 8, 11, 13, 17].map(Psl2));
    let mut corpus: Vec<CorpusEntry> = recipes.into_iter().map(CorpusEntry::full).collect();
    corpus.push(CorpusEntry {
        recipe: Psl2(27),
        above: Some(IntervalSeed::FirstOfOrder(2)),
    });
    corpus
}

/// Runs every applicable checker on one entry. Failures to build or analyse
/// the group become error reports.
pub fn run_entry(entry: &CorpusEntry, limits: Limits) -> Vec<VerdictReport> {
    let name = entry.name();
    let table = match entry.recipe.build() {
        Ok(t) => t,
        Err(e) => return vec![VerdictReport::error(checker::CORPUS, &name, &e)],
    };
    match &entry.above {
        None => match Analysis::new(name.clone(), &table, limits.lattice_budget) {
            Ok(a) => check_all(&a),
            Err(e) => vec![VerdictReport::error(checker::CORPUS, &name, &e)],
        },
        Some(seed) => {
            let interval = seed.resolve(&table).and_then(|k| overgroups(&table, &k));
            match interval {
                Ok(iv) => {
                    let soluble = crate::classify::is_soluble(&table);
                    vec![
                        check_mixed_maximality_interval(&name, &iv, soluble),
                        check_unique_non_covering_interval(&name, &iv, soluble),
                    ]
                }
                Err(e) => vec![VerdictReport::error(checker::CORPUS, &name, &e)],
            }
        }
    }
}

/// Runs every entry (in parallel, one group per worker) and concatenates the
/// reports in entry order.
pub fn run_corpus(entries: &[CorpusEntry], limits: Limits) -> Vec<VerdictReport> {
    entries
        .par_iter()
        .map(|e| run_entry(e, limits))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub error: usize,
}

pub fn summarize(reports: &[VerdictReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.outcome {
            Outcome::Pass => s.pass += 1,
            Outcome::Fail => s.fail += 1,
            Outcome::NotApplicable => s.not_applicable += 1,
            Outcome::Error => s.error += 1,
        }
    }
    s
}
