//! Group-spec files, JSON verdict reports and DOT export of class lattices.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::classify::structure_hint;
use crate::constructions::GroupRecipe;
use crate::error::{Error, Result};
use crate::lattice::ClassedLattice;
use crate::perm::GroupTable;
use crate::verify::{CorpusEntry, IntervalSeed, VerdictReport};

/// A named group given either by a recipe or by explicit generators
/// (stored as [`GroupRecipe::ExplicitGenerators`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub recipe: GroupRecipe,
}

impl GroupSpec {
    /// Spec echoing the generators of an already built group.
    pub fn from_table(name: impl Into<String>, table: &GroupTable) -> Self {
        let mut generators: Vec<String> = table
            .generators()
            .iter()
            .map(|&g| table.element(g).to_string())
            .collect();
        if generators.is_empty() {
            generators.push("()".to_string());
        }
        GroupSpec {
            name: name.into(),
            recipe: GroupRecipe::ExplicitGenerators {
                degree: table.degree(),
                generators,
            },
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        self.recipe.build()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("name: {}\n", self.name);
        match &self.recipe {
            GroupRecipe::ExplicitGenerators { degree, generators } => {
                let _ = writeln!(out, "degree: {degree}");
                let _ = writeln!(out, "gens: {}", generators.join(", "));
            }
            other => {
                let _ = writeln!(out, "recipe: {other}");
            }
        }
        out
    }
}

/// Splits on commas that are not inside parentheses.
pub fn split_generators(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Parses the line-oriented spec format: `name:`, `degree:`, `gens:` or
/// `recipe:` keys, one per line, `#` starting a comment.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut name: Option<String> = None;
    let mut degree: Option<(usize, usize)> = None;
    let mut gens: Option<(usize, Vec<String>)> = None;
    let mut recipe: Option<(usize, GroupRecipe)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, "expected 'key: value'"))?;
        let (key, value) = (key.trim(), value.trim());
        let duplicate = || parse_err(line_no, format!("duplicate key '{key}'"));
        match key {
            "name" => {
                if name.replace(value.to_string()).is_some() {
                    return Err(duplicate());
                }
            }
            "degree" => {
                let d = value
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid degree '{value}'")))?;
                if degree.replace((line_no, d)).is_some() {
                    return Err(duplicate());
                }
            }
            "gens" => {
                let list: Vec<String> = split_generators(value)
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                if list.is_empty() {
                    return Err(parse_err(line_no, "no generators"));
                }
                if gens.replace((line_no, list)).is_some() {
                    return Err(duplicate());
                }
            }
            "recipe" => {
                let r = value
                    .parse()
                    .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
                if recipe.replace((line_no, r)).is_some() {
                    return Err(duplicate());
                }
            }
            other => return Err(parse_err(line_no, format!("unknown key '{other}'"))),
        }
    }
    let last = text.lines().count().max(1);
    let recipe = match (gens, recipe) {
        (Some(_), Some((line, _))) => {
            return Err(parse_err(line, "both 'gens' and 'recipe' given"))
        }
        (None, None) => return Err(parse_err(last, "missing 'gens' or 'recipe'")),
        (Some((line, generators)), None) => {
            let (_, degree) = degree.ok_or_else(|| parse_err(line, "'gens' requires 'degree'"))?;
            for g in &generators {
                crate::perm::Permutation::parse_cycles(g, degree)
                    .map_err(|e| parse_err(line, format!("{g}: {e}")))?;
            }
            GroupRecipe::ExplicitGenerators { degree, generators }
        }
        (None, Some((_, r))) => {
            if let Some((line, _)) = degree {
                return Err(parse_err(line, "'degree' is only used with 'gens'"));
            }
            r
        }
    };
    Ok(GroupSpec {
        name: name.unwrap_or_else(|| recipe.to_string()),
        recipe,
    })
}

pub fn read_spec(path: &Path) -> Result<GroupSpec> {
    parse_spec(&std::fs::read_to_string(path)?)
}

pub fn write_spec(spec: &GroupSpec, path: &Path) -> Result<()> {
    std::fs::write(path, spec.to_text())?;
    Ok(())
}

/// Reads a spec file and builds its group.
pub fn load_spec(path: &Path) -> Result<GroupTable> {
    read_spec(path)?.build()
}

/// Corpus files list one recipe per line, optionally followed by
/// `above order=K` or `above gens (..), (..)` to request interval mode.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (recipe_text, above) = match line.split_once(" above ") {
            Some((r, a)) => (r.trim(), Some(a.trim())),
            None => (line, None),
        };
        let recipe: GroupRecipe = recipe_text
            .parse()
            .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
        let above = match above {
            None => None,
            Some(a) => Some(if let Some(k) = a.strip_prefix("order=") {
                IntervalSeed::FirstOfOrder(
                    k.trim()
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("invalid order '{k}'")))?,
                )
            } else if let Some(g) = a.strip_prefix("gens") {
                IntervalSeed::Generators(
                    split_generators(g)
                        .into_iter()
                        .map(str::to_string)
                        .collect(),
                )
            } else {
                return Err(parse_err(
                    line_no,
                    "expected 'order=K' or 'gens ...' after 'above'",
                ));
            }),
        };
        out.push(CorpusEntry { recipe, above });
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

pub fn report_json(reports: &[VerdictReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn save_report(reports: &[VerdictReport], path: &Path) -> Result<()> {
    std::fs::write(path, report_json(reports))?;
    Ok(())
}

/// DOT digraph with one vertex per conjugacy class, labelled by order and
/// structure hint, and an edge from a lower class to an upper class whenever
/// some member of the lower class is maximal in some member of the upper one.
pub fn export_dot(lat: &ClassedLattice<'_>) -> String {
    let t = lat.table();
    let mut out = String::from("digraph subgroup_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (c, class) in lat.classes().iter().enumerate() {
        let rep = lat.subgroup(class.representative);
        let _ = writeln!(
            out,
            "  c{c} [label=\"order={} [{}]\"];",
            rep.order(),
            structure_hint(t, rep)
        );
    }
    let mut edges = BTreeSet::new();
    for (c, class) in lat.classes().iter().enumerate() {
        for &low in lat.maximal_in(class.representative) {
            edges.insert((lat.class_of(low), c));
        }
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}

pub fn write_dot(lat: &ClassedLattice<'_>, path: &Path) -> Result<()> {
    std::fs::write(path, export_dot(lat))?;
    Ok(())
}
