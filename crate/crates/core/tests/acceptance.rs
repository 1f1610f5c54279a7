//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use maxsub::classify::{
    is_2maximal, is_prime, is_strictly_2maximal, max2_sets, max_over, maximality_degrees,
    structure_hint, Strictness, StructureHint,
};
use maxsub::lattice::{
    all_subgroups, all_subgroups_with_budget, cyclic, overgroups, ClassedLattice,
};
use maxsub::verify::{default_corpus, run_corpus, summarize, IntervalSeed, Limits, Outcome};
use maxsub::{GroupRecipe, GroupTable};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build(name: &str) -> GroupTable {
    name.parse::<GroupRecipe>().unwrap().build().unwrap()
}

fn order_set(lat: &ClassedLattice<'_>, reps: &[usize]) -> BTreeSet<usize> {
    reps.iter().map(|&r| lat.subgroup(r).order()).collect()
}

/// Coarse isomorphism-type label: (order, family) with the family taken from
/// the structure hint.
fn kind(t: &GroupTable, lat: &ClassedLattice<'_>, r: usize) -> (usize, &'static str) {
    let s = lat.subgroup(r);
    let family = match structure_hint(t, s) {
        StructureHint::Cyclic(_) => "cyclic",
        StructureHint::ElementaryAbelian { .. } => "elementary abelian",
        StructureHint::Abelian(_) => "abelian",
        StructureHint::Dihedral(_) => "dihedral",
        StructureHint::Quaternion(_) => "quaternion",
        StructureHint::Other(_) => "other",
    };
    (s.order(), family)
}

fn psl2_8_involution_degrees() -> Check {
    let t = build("psl2_8");
    ensure(t.order() == 504, || format!("order {}", t.order()))?;
    let lat = all_subgroups(&t).map_err(|e| e.to_string())?;
    let k = (0..lat.len())
        .find(|&i| lat.subgroup(i).order() == 2)
        .unwrap();
    let profile = maximality_degrees(&lat, k).map_err(|e| e.to_string())?;
    let degrees = profile.degree_set();
    ensure(degrees == BTreeSet::from([2, 3, 4]), || {
        format!("degrees {degrees:?}")
    })?;
    for want in [
        vec![2, 14, 504],
        vec![2, 6, 18, 504],
        vec![2, 4, 8, 56, 504],
    ] {
        let cert = profile
            .profiles
            .get(&want)
            .ok_or(format!("missing profile {want:?}"))?;
        ensure(cert.is_valid(&lat), || {
            format!("invalid certificate {want:?}")
        })?;
    }
    ensure(profile.degrees.values().all(|c| c.is_valid(&lat)), || {
        "invalid degree certificate".into()
    })
}

fn max_and_max2(name: &str, max: &[usize], max2: &[usize]) -> Result<(), String> {
    let t = build(name);
    let lat = all_subgroups(&t).map_err(|e| e.to_string())?;
    let m = order_set(&lat, &lat.maximal_class_reps());
    ensure(m == max.iter().copied().collect(), || {
        format!("Max orders {m:?}")
    })?;
    let sets = max2_sets(&lat).map_err(|e| e.to_string())?;
    let m2 = order_set(&lat, &sets.max2);
    ensure(m2 == max2.iter().copied().collect(), || {
        format!("Max2 orders {m2:?}")
    })?;
    ensure(sets.all_strict(), || "Max2 != Max2*".into())
}

fn affine_9_tables() -> Check {
    max_and_max2("affine_9", &[8, 36], &[4, 18])
}

fn u3_2_tables() -> Check {
    max_and_max2("u3_2", &[8, 36], &[4, 18])?;
    let t = build("u3_2");
    let lat = all_subgroups(&t).map_err(|e| e.to_string())?;
    let eight: Vec<usize> = lat
        .maximal_class_reps()
        .into_iter()
        .filter(|&r| lat.subgroup(r).order() == 8)
        .collect();
    ensure(eight.len() == 1, || {
        format!("{} order-8 maximal classes", eight.len())
    })?;
    let q = eight[0];
    ensure(kind(&t, &lat, q).1 == "quaternion", || {
        "order-8 maximal is not quaternion".into()
    })?;
    let below = lat.maximal_in(q);
    ensure(
        below.len() == 3 && below.iter().all(|&c| kind(&t, &lat, c) == (4, "cyclic")),
        || {
            format!(
                "maximal subgroups of Q8: {:?}",
                below.iter().map(|&c| kind(&t, &lat, c)).collect::<Vec<_>>()
            )
        },
    )
}

fn psl2_17_tables() -> Check {
    let t = build("psl2_17");
    let lat = all_subgroups(&t).map_err(|e| e.to_string())?;
    let m = order_set(&lat, &lat.maximal_class_reps());
    ensure(m == BTreeSet::from([136, 24, 18, 16]), || {
        format!("Max orders {m:?}")
    })?;
    let sets = max2_sets(&lat).map_err(|e| e.to_string())?;
    ensure(sets.all_strict(), || "Max2 != Max2*".into())?;
    let kinds: BTreeSet<(usize, &str)> = sets.strict.iter().map(|&r| kind(&t, &lat, r)).collect();
    let mut orders: Vec<usize> = kinds.iter().map(|k| k.0).collect();
    orders.sort_unstable();
    ensure(orders == [6, 8, 8, 9, 12, 68], || {
        format!("Max2 type orders {orders:?} from {kinds:?}")
    })?;
    ensure(
        kinds.contains(&(8, "cyclic")) && kinds.contains(&(8, "dihedral")),
        || format!("order-8 types {kinds:?}"),
    )
}

fn alternating_6_s3() -> Check {
    let t = build("alternating_6");
    let lat = all_subgroups(&t).map_err(|e| e.to_string())?;
    let k = lat
        .classes()
        .iter()
        .map(|c| c.representative)
        .find(|&r| {
            kind(&t, &lat, r) == (6, "dihedral")
                && lat
                    .covers_of(r)
                    .iter()
                    .any(|&m| lat.subgroup(m).order() == 60)
        })
        .ok_or("no S3 maximal in an A5")?;
    ensure(matches!(is_2maximal(&lat, k), Ok(Some(_))), || {
        "S3 not 2-maximal".into()
    })?;
    ensure(
        matches!(
            is_strictly_2maximal(&lat, k),
            Ok(Strictness::NotStrict { .. })
        ),
        || "S3 strictly 2-maximal".into(),
    )?;
    let profile = maximality_degrees(&lat, k).map_err(|e| e.to_string())?;
    let cert = profile
        .profiles
        .get(&vec![6, 18, 36, 360])
        .ok_or("missing (6,18,36,360)")?;
    ensure(cert.length() == 3 && cert.is_valid(&lat), || {
        "bad certificate".into()
    })
}

fn psl2_27_interval() -> Check {
    let t = build("psl2_27");
    let k = IntervalSeed::FirstOfOrder(2)
        .resolve(&t)
        .map_err(|e| e.to_string())?;
    let lat = overgroups(&t, &k).map_err(|e| e.to_string())?;
    let over = max_over(&lat, lat.bottom()).map_err(|e| e.to_string())?;
    let classes: BTreeSet<usize> = over.iter().map(|&m| lat.class_of(m)).collect();
    let orders: BTreeSet<usize> = classes
        .iter()
        .map(|&c| lat.subgroup(lat.classes()[c].representative).order())
        .collect();
    ensure(orders == BTreeSet::from([26, 28, 12]), || {
        format!("max_over orders {orders:?}")
    })?;
    let covered_by_26 = over
        .iter()
        .any(|&m| lat.subgroup(m).order() == 26 && lat.is_cover(lat.bottom(), m));
    ensure(covered_by_26, || {
        "K not maximal in an order-26 overgroup".into()
    })?;
    ensure(
        matches!(is_2maximal(&lat, lat.bottom()), Ok(Some(_))),
        || "K not 2-maximal".into(),
    )?;
    let profile = maximality_degrees(&lat, lat.bottom()).map_err(|e| e.to_string())?;
    let through = profile
        .profiles
        .values()
        .any(|c| c.length() == 3 && c.is_valid(&lat) && matches!(c.orders[2], 28 | 12));
    ensure(through, || {
        format!(
            "no length-3 chain through 28 or 12: {:?}",
            profile.profiles.keys()
        )
    })
}

fn oracle_counts() -> Check {
    let mut checked = 0;
    for entry in default_corpus().into_iter().filter(|e| e.above.is_none()) {
        let t = entry.recipe.build().map_err(|e| e.to_string())?;
        if t.order() > 24 {
            continue;
        }
        let lat = all_subgroups(&t).map_err(|e| e.to_string())?;
        let oracle = common::oracle_subgroup_count(&t);
        ensure(lat.len() == oracle, || {
            format!("{}: {} vs oracle {oracle}", entry.name(), lat.len())
        })?;
        checked += 1;
    }
    let s4 = build("symmetric_4");
    ensure(common::oracle_subgroup_count(&s4) == 30, || {
        "S4 oracle".into()
    })?;
    ensure(
        common::oracle_subgroup_count(&build("quaternion8")) == 6,
        || "Q8 oracle".into(),
    )?;
    ensure(checked > 50, || format!("only {checked} groups checked"))
}

fn master_corpus() -> Check {
    let reports = run_corpus(&default_corpus(), Limits::default());
    let s = summarize(&reports);
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| matches!(r.outcome, Outcome::Fail | Outcome::Error))
        .map(|r| format!("{} {} {:?}", r.group, r.checker, r.notes))
        .collect();
    ensure(bad.is_empty(), || {
        format!("{} fail, {} error: {bad:?}", s.fail, s.error)
    })?;
    ensure(s.pass > 0, || "nothing passed".into())
}

fn lattice_properties(name: &str, t: &GroupTable, lat: &ClassedLattice<'_>) -> Check {
    let n = t.order();
    let subs = lat.subgroups();
    for s in subs {
        ensure(n % s.order() == 0, || {
            format!("{name}: Lagrange fails for order {}", s.order())
        })?;
    }
    // index multiplicativity and covering soundness
    for b in 0..subs.len() {
        let below: Vec<usize> = (0..subs.len())
            .filter(|&a| a != b && subs[a].is_subgroup_of(&subs[b]))
            .collect();
        let mut maximal: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&a| {
                !below
                    .iter()
                    .any(|&c| c != a && subs[a].is_subgroup_of(&subs[c]))
            })
            .collect();
        maximal.sort_unstable();
        let mut reported = lat.maximal_in(b).to_vec();
        reported.sort_unstable();
        ensure(maximal == reported, || {
            format!("{name}: covers of #{b} differ")
        })?;
        for &a in &below {
            let (ga, gb, ba) = (
                n / subs[a].order(),
                n / subs[b].order(),
                subs[b].order() / subs[a].order(),
            );
            ensure(
                ga == gb * ba && subs[b].order() % subs[a].order() == 0,
                || format!("{name}: index multiplicativity fails"),
            )?;
        }
    }
    // conjugation closure
    let raw = common::RawGroup::from_table(t);
    let mut seen = 0;
    for class in lat.classes() {
        let members: BTreeSet<BTreeSet<usize>> = class
            .members
            .iter()
            .map(|&m| subs[m].elements().collect())
            .collect();
        ensure(members.len() == class.members.len(), || {
            format!("{name}: repeated class member")
        })?;
        for m in &members {
            for &g in t.generators() {
                ensure(members.contains(&raw.conjugate_set(m, g)), || {
                    format!("{name}: class not closed under conjugation")
                })?;
            }
        }
        seen += members.len();
    }
    ensure(seen == subs.len(), || {
        format!("{name}: classes do not partition")
    })?;
    // Max2 emptiness
    let sets = max2_sets(lat).map_err(|e| e.to_string())?;
    ensure(sets.max2.is_empty() == (n == 1 || is_prime(n)), || {
        format!("{name}: Max2 emptiness")
    })?;
    // strictness and degree sets
    for &k in &sets.max2 {
        let strict = matches!(is_strictly_2maximal(lat, k), Ok(Strictness::Strict));
        let degrees = maximality_degrees(lat, k)
            .map_err(|e| e.to_string())?
            .degree_set();
        ensure(strict == (degrees == BTreeSet::from([2])), || {
            format!("{name}: strictness vs degrees {degrees:?}")
        })?;
    }
    Ok(())
}

fn property_suite() -> Check {
    let mut checked = 0;
    for entry in default_corpus().into_iter().filter(|e| e.above.is_none()) {
        let t = entry.recipe.build().map_err(|e| e.to_string())?;
        let lat = all_subgroups_with_budget(&t, usize::MAX).map_err(|e| e.to_string())?;
        lattice_properties(&entry.name(), &t, &lat)?;
        checked += 1;
    }
    // the interval-mode group: Lagrange and index multiplicativity on its interval
    let t = build("psl2_27");
    let k = cyclic(
        &t,
        (0..t.order()).find(|&g| t.element_order(g) == 2).unwrap(),
    );
    let lat = overgroups(&t, &k).map_err(|e| e.to_string())?;
    for s in lat.subgroups() {
        ensure(
            t.order() % s.order() == 0 && s.order() % k.order() == 0,
            || "psl2_27 Lagrange".into(),
        )?;
    }
    ensure(checked > 80, || format!("only {checked} groups checked"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        (
            "1 psl2_8 involution maximality degrees",
            Duration::from_secs(120),
            psl2_8_involution_degrees,
        ),
        (
            "2 affine_9 Max/Max2 tables",
            Duration::from_secs(5),
            affine_9_tables,
        ),
        (
            "3 u3_2 Max/Max2 tables",
            Duration::from_secs(5),
            u3_2_tables,
        ),
        (
            "4 psl2_17 Max/Max2 tables",
            Duration::from_secs(900),
            psl2_17_tables,
        ),
        (
            "5 alternating_6 non-strict S3",
            Duration::from_secs(120),
            alternating_6_s3,
        ),
        (
            "6 psl2_27 involution interval",
            Duration::from_secs(300),
            psl2_27_interval,
        ),
        (
            "7 oracle subgroup counts",
            Duration::from_secs(600),
            oracle_counts,
        ),
        (
            "8 master corpus verification",
            Duration::from_secs(1800),
            master_corpus,
        ),
        (
            "9 property suite",
            Duration::from_secs(1800),
            property_suite,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            })
        });
        match result {
            Ok(()) => println!("PASS  criterion {name} ({:.2}s)", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL  criterion {name} ({:.2}s): {why}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
