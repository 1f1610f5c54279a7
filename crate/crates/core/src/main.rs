use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use maxsub::classify::{max2_sets, maximality_degrees, structure_hint};
use maxsub::io::{export_dot, load_corpus, read_spec, save_report, split_generators, GroupSpec};
use maxsub::lattice::{
    all_subgroups_with_budget, overgroups, ClassedLattice, DEFAULT_LATTICE_BUDGET,
};
use maxsub::verify::{
    check_all, check_mixed_maximality_interval, check_unique_non_covering_interval, default_corpus,
    run_corpus, summarize, Analysis, CorpusEntry, IntervalSeed, Limits, Outcome, VerdictReport,
};
use maxsub::{Error, GroupTable, SubgroupSet};

#[derive(Parser)]
#[command(
    name = "maxsub",
    version,
    about = "Subgroup lattices and maximality depth of finite permutation groups"
)]
struct Cli {
    /// Maximum number of subgroups enumerated for a full lattice.
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Recipe identifier (e.g. psl2_17, affine_9, u3_2) or path to a spec file.
    group: String,
    /// Work in the interval above the subgroup generated by these cycles
    /// (comma-separated at top level), e.g. "(1,2)(3,4), (5,6)(7,8)".
    #[arg(long)]
    above: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and echo its order and generators.
    Build {
        group: String,
        /// Also write the group as a spec file.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Count subgroups and conjugacy classes.
    Lattice(Target),
    /// Print the Max, Max2 and Max2* class tables.
    Classify {
        group: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Maximal chains above the cyclic subgroup of the first element of the given order.
    Chains {
        group: String,
        #[arg(long)]
        element_order: usize,
    },
    /// Run the structural checkers on one group or a corpus.
    Verify {
        /// Single group to check; without it the corpus is run.
        group: Option<String>,
        #[arg(long, requires = "group")]
        above: Option<String>,
        /// `default` or a corpus file.
        #[arg(long, conflicts_with = "group")]
        corpus: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write the class lattice as a DOT digraph.
    Dot {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

enum Failure {
    Verification,
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => {
                Failure::Budget(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn resolve(ident: &str) -> Result<GroupSpec, Error> {
    let path = Path::new(ident);
    if path.is_file() {
        return read_spec(path);
    }
    let recipe = ident
        .parse()
        .map_err(|_| Error::InvalidRecipe(format!("unknown group identifier '{ident}'")))?;
    Ok(GroupSpec {
        name: ident.to_string(),
        recipe,
    })
}

fn seed(table: &GroupTable, above: &str) -> Result<SubgroupSet, Error> {
    let gens = split_generators(above)
        .into_iter()
        .map(str::to_string)
        .collect();
    IntervalSeed::Generators(gens).resolve(table)
}

fn lattice<'g>(
    table: &'g GroupTable,
    above: Option<&str>,
    budget: usize,
) -> Result<ClassedLattice<'g>, Error> {
    match above {
        Some(a) => overgroups(table, &seed(table, a)?),
        None => all_subgroups_with_budget(table, budget),
    }
}

#[derive(Serialize)]
struct ClassRow {
    order: usize,
    hint: String,
    size: usize,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct ClassTables {
    group: String,
    order: usize,
    max: Vec<ClassRow>,
    max2: Vec<ClassRow>,
    strict_max2: Vec<ClassRow>,
}

fn rows(lat: &ClassedLattice<'_>, reps: &[usize]) -> Vec<ClassRow> {
    let t = lat.table();
    reps.iter()
        .map(|&r| {
            let s = lat.subgroup(r);
            ClassRow {
                order: s.order(),
                hint: structure_hint(t, s).to_string(),
                size: lat.classes()[lat.class_of(r)].members.len(),
                generators: s.generator_cycles(t),
            }
        })
        .collect()
}

fn print_rows(title: &str, rows: &[ClassRow]) {
    let total: usize = rows.iter().map(|r| r.size).sum();
    println!("{title}: {} classes, {total} subgroups", rows.len());
    for r in rows {
        println!(
            "  order={:<6} {:<24} class size {}",
            r.order, r.hint, r.size
        );
    }
}

fn print_report(r: &VerdictReport) {
    println!(
        "{:<28} {:<26} {:<15} instances={}",
        r.group, r.checker, r.outcome, r.instances
    );
    for (w, note) in r.witnesses.iter().zip(&r.notes) {
        println!("    witness orders {:?}: {note}", w.orders);
    }
    if r.outcome == Outcome::Error {
        for note in &r.notes {
            println!("    {note}");
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = cli.budget;
    match cli.command {
        Command::Build { group, spec } => {
            let gs = resolve(&group)?;
            let t = gs.build()?;
            println!("group: {}", gs.name);
            println!("order: {}", t.order());
            println!("degree: {}", t.degree());
            println!("generators:");
            for &g in t.generators() {
                println!("  {}", t.element(g));
            }
            if let Some(path) = spec {
                maxsub::io::write_spec(&GroupSpec::from_table(gs.name, &t), &path)?;
            }
        }
        Command::Lattice(target) => {
            let t = resolve(&target.group)?.build()?;
            let lat = lattice(&t, target.above.as_deref(), budget)?;
            let scope = if lat.is_full() { "full" } else { "interval" };
            println!("scope: {scope}");
            println!("group order: {}", t.order());
            println!("subgroups: {}", lat.len());
            println!("classes: {}", lat.classes().len());
        }
        Command::Classify { group, json } => {
            let gs = resolve(&group)?;
            let t = gs.build()?;
            let lat = all_subgroups_with_budget(&t, budget)?;
            let sets = max2_sets(&lat)?;
            let tables = ClassTables {
                group: gs.name,
                order: t.order(),
                max: rows(&lat, &lat.maximal_class_reps()),
                max2: rows(&lat, &sets.max2),
                strict_max2: rows(&lat, &sets.strict),
            };
            println!("group {} of order {}", tables.group, tables.order);
            print_rows("Max", &tables.max);
            print_rows("Max2", &tables.max2);
            print_rows("Max2*", &tables.strict_max2);
            println!("Max2 = Max2*: {}", sets.all_strict());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&tables).expect("tables serialize");
                std::fs::write(path, text + "\n").map_err(Error::from)?;
            }
        }
        Command::Chains {
            group,
            element_order,
        } => {
            let t = resolve(&group)?.build()?;
            let k = IntervalSeed::FirstOfOrder(element_order).resolve(&t)?;
            let lat = overgroups(&t, &k)?;
            let profile = maximality_degrees(&lat, lat.bottom())?;
            println!(
                "subject: order {} generated by {}",
                k.order(),
                k.generator_cycles(&t).join(", ")
            );
            println!("2-maximal: {}", profile.is_2max);
            println!("strictly 2-maximal: {}", profile.is_strictly_2max);
            let degrees: Vec<String> = profile.degree_set().iter().map(usize::to_string).collect();
            println!("degrees: {{{}}}", degrees.join(","));
            for (orders, cert) in &profile.profiles {
                let orders: Vec<String> = orders.iter().map(usize::to_string).collect();
                println!("  length {}: ({})", cert.length(), orders.join(","));
                for &s in &cert.chain {
                    println!("    {}", lat.subgroup(s).generator_cycles(&t).join(", "));
                }
            }
        }
        Command::Verify {
            group,
            above,
            corpus,
            json,
        } => {
            let limits = Limits {
                lattice_budget: budget,
            };
            let reports = match group {
                Some(group) => {
                    let gs = resolve(&group)?;
                    let t = gs.build()?;
                    match above.as_deref() {
                        Some(a) => {
                            let lat = lattice(&t, Some(a), budget)?;
                            let soluble = maxsub::classify::is_soluble(&t);
                            let name = format!("{} above {a}", gs.name);
                            vec![
                                check_mixed_maximality_interval(&name, &lat, soluble),
                                check_unique_non_covering_interval(&name, &lat, soluble),
                            ]
                        }
                        None => check_all(&Analysis::new(gs.name, &t, budget)?),
                    }
                }
                None => {
                    let entries: Vec<CorpusEntry> = match corpus.as_deref() {
                        None | Some("default") => default_corpus(),
                        Some(path) => load_corpus(Path::new(path))?,
                    };
                    run_corpus(&entries, limits)
                }
            };
            for r in &reports {
                print_report(r);
            }
            let s = summarize(&reports);
            println!(
                "summary: {} pass, {} fail, {} not applicable, {} error",
                s.pass, s.fail, s.not_applicable, s.error
            );
            if let Some(path) = json {
                save_report(&reports, &path)?;
            }
            if s.fail > 0 || s.error > 0 {
                return Err(Failure::Verification);
            }
        }
        Command::Dot { target, dot } => {
            let t = resolve(&target.group)?.build()?;
            let lat = lattice(&t, target.above.as_deref(), budget)?;
            let doc = export_dot(&lat);
            match dot {
                Some(path) => std::fs::write(path, doc).map_err(Error::from)?,
                None => print!("{doc}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
