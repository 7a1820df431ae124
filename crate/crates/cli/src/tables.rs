use std::io::Write;
use std::path::Path;

use foliage::atlas::{build_tables, AtlasReport, TableRow};

use crate::golden::{compare_report, Golden};
use crate::{finish, write_json, CliConfig, CliResult, OutputFormat};

pub const CSV_HEADER: [&str; 7] = ["component", "kind", "dim", "zdim", "reduced", "aliases", "comment"];

pub fn cmd_tables(
    config: &CliConfig,
    degree: u32,
    golden: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let golden = Golden::load(golden)?;
    let report = build_tables(degree, config.seed, config.trials)?;
    match config.output {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => write_csv(&report, out)?,
        OutputFormat::Text => write_text(&report, out)?,
    }
    let mut diffs = compare_report(&report, &golden);
    for m in report.model_checks.iter().filter(|m| !m.holds) {
        diffs.push(format!("model check failed: {} {}", m.model, m.statement));
    }
    finish(&diffs, err)
}

fn csv_record(r: &TableRow) -> [String; 7] {
    [
        r.component.clone(),
        r.kind.clone(),
        r.dim.to_string(),
        r.zdim.to_string(),
        r.reduced.to_string(),
        r.aliases.join(";"),
        r.comment.clone(),
    ]
}

/// The rows of the four component tables, one record each.
pub fn write_csv(report: &AtlasReport, out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for (_, row) in report.table_rows() {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}

fn text_rows(title: &str, rows: &[TableRow], out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "{title}")?;
    let width = rows.iter().map(|r| r.header().chars().count()).max().unwrap_or(0);
    for r in rows {
        let header = r.header();
        let pad = width - header.chars().count();
        write!(out, "  {header}{:pad$}  {:>3}  {:>3}", "", r.dim, r.zdim)?;
        if !r.reduced {
            write!(out, "  non-reduced")?;
        }
        if !r.comment.is_empty() {
            write!(out, "  {}", r.comment)?;
        }
        writeln!(out)?;
    }
    writeln!(out)?;
    Ok(())
}

pub fn write_text(report: &AtlasReport, out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "degree {}  seed {}  trials {}", report.degree, report.seed, report.trials)?;
    writeln!(out)?;
    for t in &report.tables {
        text_rows(&format!("[{}]  dim  Zdim", t.name), &t.rows, out)?;
    }
    text_rows("[contained candidates]", &report.contained_candidates, out)?;
    text_rows("[additive]", &report.additive, out)?;

    writeln!(out, "[components]")?;
    for c in &report.components {
        let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        write!(out, "  {:<28} {:>3} {:>3}", c.name, show(c.dim), show(c.zdim))?;
        if c.flags.has_rational_first_integral {
            write!(out, "  first integral")?;
        }
        if let Some(l) = c.leaf_degree {
            write!(out, " (leaves of degree {l})")?;
        }
        if c.derived {
            write!(out, "  derived")?;
        }
        if !c.note.is_empty() {
            write!(out, "  {}", c.note)?;
        }
        writeln!(out)?;
    }
    writeln!(out)?;
    let k = &report.counts;
    writeln!(out, "[counts]")?;
    writeln!(out, "  without rational first integral  {}", k.without_rational_first_integral)?;
    writeln!(out, "  with rational first integral     {}", k.with_rational_first_integral)?;
    writeln!(out, "  total                            {}", k.total)?;
    writeln!(out, "  non-reduced: {}", k.non_reduced.join(", "))?;
    writeln!(out)?;
    writeln!(out, "[model checks]")?;
    for m in &report.model_checks {
        writeln!(out, "  {} {}: {}", if m.holds { "ok  " } else { "FAIL" }, m.model, m.statement)?;
    }
    Ok(())
}
