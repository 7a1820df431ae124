use std::io::Write;
use std::path::Path;

use foliage::projforms::random_combination;
use foliage::rng;
use foliage::torus::{
    eigenspace, enumerate_candidates, kupka_verdict, longlist_filter, non_kupka_ideal, normalizer_dim,
    quasi_homog_zero_dim_probe, tm_dim_from, KupkaVerdict, ProbeReport, Screening, WeightData,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::golden::{compare_sets, Golden};
use crate::{finish, write_json, CliConfig, CliResult, OutputFormat};

/// Certificates for one surviving quadruple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadrupleRecord {
    pub weights: WeightData,
    pub label: String,
    pub eigenspace_dim: usize,
    pub tm_dim: Option<usize>,
    pub normalizer_dim: Option<usize>,
    /// A sampled member has coprime coefficients.
    pub codim_two: bool,
    pub integrating_factor_dim: Option<usize>,
    pub kupka: Option<KupkaVerdict>,
    pub probe: Option<ProbeReport>,
    /// Why the probe was not run.
    pub probe_skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub degree: u32,
    pub seed: u64,
    pub trials: usize,
    pub candidates: usize,
    pub kupka_only: bool,
    pub quadruples: Vec<QuadrupleRecord>,
}

fn probe(d: u32, w: &WeightData, seed: u64, bound: i64) -> Result<ProbeReport, String> {
    if w.a() < 1 {
        return Err("weights are not all positive".into());
    }
    let v = eigenspace(d, w);
    let form = random_combination(3, d, &v, &mut rng::stream(seed, &format!("probe/{d}/{w}")));
    let gens = non_kupka_ideal(&form).map_err(|e| e.to_string())?;
    quasi_homog_zero_dim_probe(&gens, &w.weights(), bound).map_err(|e| e.to_string())
}

fn record(d: u32, s: &Screening) -> QuadrupleRecord {
    let w = s.weights;
    QuadrupleRecord {
        weights: w,
        label: w.to_string(),
        eigenspace_dim: s.eigenspace_dim,
        tm_dim: tm_dim_from(s.eigenspace_dim, &w).ok(),
        normalizer_dim: normalizer_dim(&w).ok(),
        codim_two: s.codim_two,
        integrating_factor_dim: s.integrating_factor_dim,
        kupka: kupka_verdict(d, &w).ok(),
        probe: None,
        probe_skipped: None,
    }
}

pub fn enumeration(
    config: &CliConfig,
    d: u32,
    kupka_only: bool,
    probe_bound: Option<i64>,
) -> CliResult<Enumeration> {
    let candidates = enumerate_candidates(d);
    let survivors = longlist_filter(d, &candidates, config.seed, config.trials);
    let mut quadruples: Vec<QuadrupleRecord> = survivors.iter().map(|s| record(d, s)).collect();
    if kupka_only {
        if d < 2 {
            return Err(crate::CliError::Input("the Kupka criterion needs degree at least 2".into()));
        }
        quadruples.retain(|r| r.kupka.is_some_and(|k| k.is_kupka()));
    }
    if let Some(bound) = probe_bound {
        let probes: Vec<_> = quadruples
            .par_iter()
            .map(|r| probe(d, &r.weights, config.seed, bound))
            .collect();
        for (r, p) in quadruples.iter_mut().zip(probes) {
            match p {
                Ok(report) => r.probe = Some(report),
                Err(why) => r.probe_skipped = Some(why),
            }
        }
    }
    Ok(Enumeration {
        degree: d,
        seed: config.seed,
        trials: config.trials,
        candidates: candidates.len(),
        kupka_only,
        quadruples,
    })
}

/// Differences from the golden lists; empty when the degree has none.
pub fn compare_enumeration(e: &Enumeration, golden: &Golden) -> Vec<String> {
    let mut diffs = Vec::new();
    if e.degree != golden.degree {
        return diffs;
    }
    let listed: Vec<WeightData> = e.quadruples.iter().map(|r| r.weights).collect();
    if !e.kupka_only {
        compare_sets("longlist", &golden.longlist, &listed, &mut diffs);
        return diffs;
    }
    let of_kind = |extra: bool| -> Vec<WeightData> {
        e.quadruples
            .iter()
            .filter(|r| matches!(r.kupka, Some(KupkaVerdict::RecordedExtra)) == extra)
            .map(|r| r.weights)
            .collect()
    };
    compare_sets("kupka", &golden.kupka, &of_kind(false), &mut diffs);
    compare_sets("extra_kupka", &golden.extra_kupka, &of_kind(true), &mut diffs);
    diffs
}

fn show<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn kupka_label(k: Option<KupkaVerdict>) -> String {
    match k {
        None => "-".into(),
        Some(KupkaVerdict::Family { family, via_involution }) => {
            format!("family {family}{}", if via_involution { " (involution)" } else { "" })
        }
        Some(KupkaVerdict::RecordedExtra) => "recorded".into(),
        Some(KupkaVerdict::NotKupka) => "no".into(),
    }
}

fn probe_label(r: &QuadrupleRecord) -> String {
    match (&r.probe, &r.probe_skipped) {
        (Some(p), _) => format!("{:?}", p.verdict).to_lowercase(),
        (None, Some(_)) => "skipped".into(),
        (None, None) => "-".into(),
    }
}

fn write_csv(e: &Enumeration, out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "a", "b", "c", "n", "eigenspace_dim", "tm_dim", "normalizer_dim", "codim_two",
        "integrating_factor_dim", "kupka", "probe",
    ])?;
    for r in &e.quadruples {
        let w_ = r.weights;
        w.write_record([
            w_.a().to_string(),
            w_.b().to_string(),
            w_.c().to_string(),
            w_.n().to_string(),
            r.eigenspace_dim.to_string(),
            show(r.tm_dim),
            show(r.normalizer_dim),
            r.codim_two.to_string(),
            show(r.integrating_factor_dim),
            kupka_label(r.kupka),
            probe_label(r),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_text(e: &Enumeration, out: &mut dyn Write) -> CliResult<()> {
    writeln!(
        out,
        "degree {}: {} candidate planes, {} quadruples{}",
        e.degree,
        e.candidates,
        e.quadruples.len(),
        if e.kupka_only { " with finitely many non-Kupka points" } else { "" }
    )?;
    writeln!(out, "{:<14} {:>4} {:>4} {:>5} {:>4} {:>4}  kupka", "weights", "dimV", "TM", "norm", "gcd", "ifac")?;
    for r in &e.quadruples {
        write!(
            out,
            "{:<14} {:>4} {:>4} {:>5} {:>4} {:>4}  {}",
            r.label,
            r.eigenspace_dim,
            show(r.tm_dim),
            show(r.normalizer_dim),
            if r.codim_two { "1" } else { "non1" },
            show(r.integrating_factor_dim),
            kupka_label(r.kupka),
        )?;
        if r.probe.is_some() {
            write!(out, "  probe {}", probe_label(r))?;
        }
        if let Some(why) = &r.probe_skipped {
            write!(out, "  probe skipped: {why}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn cmd_enumerate(
    config: &CliConfig,
    degree: u32,
    kupka_only: bool,
    probe_bound: Option<i64>,
    golden: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let golden = Golden::load(golden)?;
    let e = enumeration(config, degree, kupka_only, probe_bound)?;
    match config.output {
        OutputFormat::Json => write_json(out, &e)?,
        OutputFormat::Csv => write_csv(&e, out)?,
        OutputFormat::Text => write_text(&e, out)?,
    }
    finish(&compare_enumeration(&e, &golden), err)
}
