//! Reference values and their comparison with computed output.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use foliage::atlas::{AtlasReport, TableRow};
use foliage::torus::WeightData;
use serde::Deserialize;

use crate::{CliError, CliResult};

const BUNDLED: &str = include_str!("../fixtures/golden.json");

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GoldenRow {
    pub component: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub dim: usize,
    pub zdim: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GoldenCounts {
    pub without_rational_first_integral: usize,
    pub with_rational_first_integral: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Golden {
    pub degree: u32,
    pub tables: BTreeMap<String, Vec<GoldenRow>>,
    pub contained_candidates: Vec<GoldenRow>,
    pub additive: Vec<GoldenRow>,
    pub counts: GoldenCounts,
    pub non_reduced: Vec<String>,
    pub longlist: Vec<WeightData>,
    pub kupka: Vec<WeightData>,
    pub extra_kupka: Vec<WeightData>,
}

impl Golden {
    pub fn bundled() -> Golden {
        serde_json::from_str(BUNDLED).expect("bundled golden file parses")
    }

    pub fn load(path: Option<&Path>) -> CliResult<Golden> {
        let Some(path) = path else {
            return Ok(Golden::bundled());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read golden file {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("golden file {}: {e}", path.display())))
    }
}

fn compare_rows(section: &str, expected: &[GoldenRow], actual: &[TableRow], diffs: &mut Vec<String>) {
    let computed: BTreeMap<&str, &TableRow> = actual.iter().map(|r| (r.component.as_str(), r)).collect();
    for g in expected {
        let Some(r) = computed.get(g.component.as_str()) else {
            diffs.push(format!("{section}: missing row {}", g.component));
            continue;
        };
        if r.dim != g.dim {
            diffs.push(format!("{section}: {} dim {} (expected {})", g.component, r.dim, g.dim));
        }
        if r.zdim != g.zdim {
            diffs.push(format!("{section}: {} zdim {} (expected {})", g.component, r.zdim, g.zdim));
        }
        if r.aliases != g.aliases {
            diffs.push(format!(
                "{section}: {} aliases {:?} (expected {:?})",
                g.component, r.aliases, g.aliases
            ));
        }
    }
    let known: BTreeSet<&str> = expected.iter().map(|g| g.component.as_str()).collect();
    for r in actual {
        if !known.contains(r.component.as_str()) {
            diffs.push(format!("{section}: unexpected row {}", r.component));
        }
    }
}

/// Every difference between the report and the golden values.
pub fn compare_report(report: &AtlasReport, golden: &Golden) -> Vec<String> {
    let mut diffs = Vec::new();
    if report.degree != golden.degree {
        diffs.push(format!("degree {} (expected {})", report.degree, golden.degree));
        return diffs;
    }
    for table in &report.tables {
        match golden.tables.get(&table.name) {
            Some(rows) => compare_rows(&table.name, rows, &table.rows, &mut diffs),
            None => diffs.push(format!("unexpected table {}", table.name)),
        }
    }
    for name in golden.tables.keys() {
        if !report.tables.iter().any(|t| &t.name == name) {
            diffs.push(format!("missing table {name}"));
        }
    }
    compare_rows("contained_candidates", &golden.contained_candidates, &report.contained_candidates, &mut diffs);
    compare_rows("additive", &golden.additive, &report.additive, &mut diffs);

    let c = &report.counts;
    let g = &golden.counts;
    for (label, got, want) in [
        ("without_rational_first_integral", c.without_rational_first_integral, g.without_rational_first_integral),
        ("with_rational_first_integral", c.with_rational_first_integral, g.with_rational_first_integral),
        ("total", c.total, g.total),
    ] {
        if got != want {
            diffs.push(format!("counts: {label} {got} (expected {want})"));
        }
    }
    compare_sets("non_reduced", &golden.non_reduced, &c.non_reduced, &mut diffs);
    diffs
}

/// Differences between two sets of labels, ignoring order.
pub fn compare_sets<T: Ord + std::fmt::Display>(section: &str, expected: &[T], actual: &[T], diffs: &mut Vec<String>) {
    let want: BTreeSet<&T> = expected.iter().collect();
    let got: BTreeSet<&T> = actual.iter().collect();
    for x in want.difference(&got) {
        diffs.push(format!("{section}: missing {x}"));
    }
    for x in got.difference(&want) {
        diffs.push(format!("{section}: unexpected {x}"));
    }
}
