//! The catalog of components and the table report.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    explicit_model_checks, leaf_degree, leaf_degree_1_3_5_8, parameterization_dim, sampled_member_zdim, slog25_family,
    slog25_quadric, ce_cubic, ce_quartic, LinearPullbackFamily, LogFamily, LogPartition, ModelCheck,
    Parameterization, Slog34Family,
};
use crate::additive::{additive_space, ta_dim_from, NilpotentData};
use crate::error::{precondition, Result};
use crate::mpoly::MPoly;
use crate::projforms::{integrating_factor_dim, random_combination, sampled_zariski_dim, TwistedOneForm};
use crate::rng;
use crate::scalar::Rational;
use crate::torus::{eigenspace, involution, tm_dim_from, WeightData};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", content = "data")]
pub enum ComponentKind {
    Log(LogPartition),
    SLog25,
    SLog34,
    TM(WeightData),
    TA(NilpotentData),
    LPB,
    /// The unidentified component containing a torus-invariant set.
    Containing(WeightData),
}

impl ComponentKind {
    pub fn family(&self) -> &'static str {
        match self {
            ComponentKind::Log(_) => "Log",
            ComponentKind::SLog25 | ComponentKind::SLog34 => "SLog",
            ComponentKind::TM(_) => "TM",
            ComponentKind::TA(_) => "TA",
            ComponentKind::LPB => "LPB",
            ComponentKind::Containing(_) => "unknown",
        }
    }

    /// Equivalent names of the same set.
    pub fn aliases(&self) -> Vec<String> {
        match self {
            ComponentKind::TM(w) | ComponentKind::Containing(w) => match involution(3, w) {
                Ok(iw) if iw != *w => vec![format!("TM₃{iw}")],
                _ => Vec::new(),
            },
            _ => Vec::new(),
        }
    }

    /// `name=alias`, as the set is written in the tables.
    pub fn header(&self) -> String {
        std::iter::once(self.to_string()).chain(self.aliases()).collect::<Vec<_>>().join("=")
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Log(p) => write!(f, "Log{p}"),
            ComponentKind::SLog25 => write!(f, "SLog(2,5)"),
            ComponentKind::SLog34 => write!(f, "SLog(3,4)"),
            ComponentKind::TM(w) => write!(f, "TM₃{w}"),
            ComponentKind::TA(p) => write!(f, "TA₃{p}"),
            ComponentKind::LPB => write!(f, "LPB(3)"),
            ComponentKind::Containing(w) => write!(f, "TM₃{w}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ComponentFlags {
    /// `dim = zdim`; absent when either is unknown.
    pub generically_reduced: Option<bool>,
    pub has_rational_first_integral: bool,
    /// A sampled member has a polynomial integrating factor.
    pub has_integrating_factor: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentDescriptor {
    pub kind: ComponentKind,
    pub name: String,
    pub dim: Option<usize>,
    pub zdim: Option<usize>,
    pub flags: ComponentFlags,
    pub aliases: Vec<String>,
    /// Degree of the general leaf when a rational first integral is known.
    pub leaf_degree: Option<u32>,
    /// Values are computed without an external reference value.
    pub derived: bool,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableId {
    Logarithmic,
    Split,
    NonintegrableNonrigid,
    NonintegrableRigid,
}

impl TableId {
    pub const ALL: [TableId; 4] = [
        TableId::Logarithmic,
        TableId::Split,
        TableId::NonintegrableNonrigid,
        TableId::NonintegrableRigid,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TableId::Logarithmic => "logarithmic",
            TableId::Split => "split",
            TableId::NonintegrableNonrigid => "nonintegrable_nonrigid",
            TableId::NonintegrableRigid => "nonintegrable_rigid",
        }
    }
}

/// One printed row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub component: String,
    pub kind: String,
    pub dim: usize,
    pub zdim: usize,
    pub reduced: bool,
    pub aliases: Vec<String>,
    pub comment: String,
}

impl TableRow {
    pub fn header(&self) -> String {
        std::iter::once(self.component.clone()).chain(self.aliases.iter().cloned()).collect::<Vec<_>>().join("=")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counts {
    pub without_rational_first_integral: usize,
    pub with_rational_first_integral: usize,
    pub total: usize,
    /// Distinct tabulated components with `dim != zdim`.
    pub non_reduced: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtlasReport {
    pub degree: u32,
    pub seed: u64,
    pub trials: usize,
    pub tables: Vec<Table>,
    pub contained_candidates: Vec<TableRow>,
    pub additive: Vec<TableRow>,
    pub components: Vec<ComponentDescriptor>,
    pub counts: Counts,
    pub model_checks: Vec<ModelCheck>,
}

impl AtlasReport {
    pub fn table(&self, id: TableId) -> &Table {
        self.tables.iter().find(|t| t.name == id.name()).expect("every table is built")
    }

    /// Rows of the four component tables, in order.
    pub fn table_rows(&self) -> impl Iterator<Item = (&str, &TableRow)> {
        self.tables
            .iter()
            .flat_map(|t| t.rows.iter().map(move |r| (t.name.as_str(), r)))
    }
}

fn tm(a: i64, b: i64, c: i64, n: i64) -> ComponentKind {
    ComponentKind::TM(WeightData::new(a, b, c, n).expect("valid weights"))
}

fn log(parts: &[u32]) -> ComponentKind {
    ComponentKind::Log(LogPartition::new(parts).expect("valid partition"))
}

const SPLIT_ALSO: &str = "Also in the split table.";

/// Rows of each table with their comments.
pub fn table_catalog(id: TableId) -> Vec<(ComponentKind, &'static str)> {
    match id {
        TableId::Logarithmic => vec![
            (log(&[1, 1, 1, 1, 1]), ""),
            (log(&[1, 1, 1, 2]), ""),
            (log(&[1, 1, 3]), ""),
            (log(&[1, 2, 2]), ""),
            (log(&[1, 4]), ""),
            (log(&[2, 3]), ""),
            (ComponentKind::SLog25, "Codimension-one zeros along a double plane."),
            (ComponentKind::SLog34, "Linear pull-back of a foliation on P^4."),
        ],
        TableId::Split => vec![
            (tm(0, 1, 2, 3), ""),
            (tm(1, 2, 3, 7), ""),
            (tm(1, 2, 4, 7), "Closed rational 1-form."),
            (tm(1, 2, 4, 9), ""),
            (tm(1, 3, 7, 10), "Rational fibration."),
            (tm(1, 4, 6, 13), ""),
            (tm(2, 3, 7, 16), ""),
        ],
        TableId::NonintegrableNonrigid => vec![
            (tm(0, 1, 1, 2), "Riccati foliation."),
            (tm(0, 1, 2, 3), SPLIT_ALSO),
            (tm(1, 1, 2, 5), "General element without algebraic leaves."),
            (tm(1, 2, 3, 6), ""),
            (tm(1, 2, 3, 7), SPLIT_ALSO),
            (tm(1, 2, 4, 7), SPLIT_ALSO),
            (tm(1, 2, 4, 9), SPLIT_ALSO),
            (tm(1, 3, 4, 10), ""),
        ],
        TableId::NonintegrableRigid => vec![
            (tm(1, 2, 5, 11), ""),
            (tm(1, 2, 5, 12), ""),
            (tm(1, 4, 6, 13), SPLIT_ALSO),
            (tm(2, 3, 5, 11), "Virtually transversely additive."),
            (tm(2, 3, 7, 16), SPLIT_ALSO),
        ],
    }
}

/// Torus-invariant sets whose general member has a rational first integral.
pub fn contained_catalog() -> Vec<(ComponentKind, &'static str)> {
    vec![
        (tm(1, 2, 5, 7), "Contained in SLog(2,5)."),
        (tm(1, 3, 4, 7), "Contained in SLog(3,4)."),
        (tm(1, 3, 5, 11), "Contained in SLog(2,5)."),
        (tm(1, 3, 7, 10), SPLIT_ALSO),
        (tm(1, 3, 5, 8), "Contained in a non-listed component."),
    ]
}

pub fn additive_catalog() -> Vec<(ComponentKind, &'static str)> {
    let ta = |a, b| ComponentKind::TA(NilpotentData::new(a, b).expect("valid data"));
    vec![
        (ta(1, 0), "Contained in TM₃(1,1,2;5)."),
        (ta(0, 1), "Contained in TM₃(1,1,2;5)."),
    ]
}

/// Whether the general member has a rational first integral.
fn has_rational_first_integral(kind: &ComponentKind) -> bool {
    match kind {
        ComponentKind::Log(p) => p.len() == 2,
        ComponentKind::SLog25 | ComponentKind::SLog34 | ComponentKind::Containing(_) => true,
        ComponentKind::TM(w) => *w == WeightData::new(1, 3, 7, 10).expect("valid weights"),
        ComponentKind::TA(_) | ComponentKind::LPB => false,
    }
}

fn known_leaf_degree(kind: &ComponentKind) -> Result<Option<u32>> {
    let x = |i| MPoly::var(4, i);
    Ok(match kind {
        ComponentKind::Log(p) if p.len() == 2 => {
            let (d1, d2) = (p.parts()[0], p.parts()[1]);
            // f1^d2 / f2^d1 with f_i = x_i^{d_i}.
            Some(leaf_degree(&x(0).pow(d1), &x(1).pow(d2), d1, d2)?)
        }
        ComponentKind::SLog25 => {
            let f = MPoly::var(4, 0).pow(5);
            Some(leaf_degree(&f, &slog25_quadric(), 5, 2)?)
        }
        ComponentKind::SLog34 => Some(leaf_degree(&ce_quartic(), &ce_cubic(), 4, 3)?),
        ComponentKind::Containing(_) => Some(leaf_degree_1_3_5_8()?),
        _ => None,
    })
}

/// The 24 catalogued components.
pub fn component_catalog() -> Vec<(ComponentKind, &'static str)> {
    let mut out = vec![(ComponentKind::LPB, "Linear pull-backs from P^2.")];
    out.extend(table_catalog(TableId::Logarithmic));
    let mut seen: Vec<ComponentKind> = out.iter().map(|(k, _)| k.clone()).collect();
    for id in [TableId::NonintegrableNonrigid, TableId::NonintegrableRigid, TableId::Split] {
        for (k, c) in table_catalog(id) {
            if !seen.contains(&k) {
                seen.push(k.clone());
                out.push((k, c));
            }
        }
    }
    out.push((
        ComponentKind::Containing(WeightData::new(1, 3, 5, 8).expect("valid weights")),
        "Containing component unknown.",
    ));
    out
}

#[derive(Clone, Debug)]
struct Evaluated {
    dim: Option<usize>,
    zdim: Option<usize>,
    integrating_factor: Option<bool>,
}

fn eval_family<P: Parameterization>(p: &P, seed: u64, label: &str, trials: usize) -> Result<Evaluated> {
    let dim = parameterization_dim(p, seed, &format!("{label}/rank"));
    let zdim = sampled_member_zdim(p, seed, &format!("{label}/zdim"), trials)?;
    let member = p.member(&p.random_point(&mut rng::stream(seed, &format!("{label}/factor"))))?;
    Ok(Evaluated {
        dim: Some(dim),
        zdim: Some(zdim),
        integrating_factor: Some(integrating_factor_dim(&member) > 0),
    })
}

fn eval_span(
    span: &[TwistedOneForm<Rational>],
    dim: usize,
    seed: u64,
    label: &str,
    trials: usize,
) -> Result<Evaluated> {
    let zdim = sampled_zariski_dim(span, seed, &format!("{label}/zdim"), trials)?;
    let member = random_combination(3, 3, span, &mut rng::stream(seed, &format!("{label}/factor")));
    Ok(Evaluated {
        dim: Some(dim),
        zdim: Some(zdim),
        integrating_factor: Some(integrating_factor_dim(&member) > 0),
    })
}

fn evaluate(kind: &ComponentKind, seed: u64, trials: usize) -> Result<Evaluated> {
    let label = format!("atlas/{kind}");
    match kind {
        ComponentKind::Log(p) => eval_family(&LogFamily::new(p.clone()), seed, &label, trials),
        ComponentKind::SLog25 => eval_family(&slog25_family(), seed, &label, trials),
        ComponentKind::SLog34 => eval_family(&Slog34Family::default(), seed, &label, trials),
        ComponentKind::LPB => eval_family(&LinearPullbackFamily::new(3), seed, &label, trials),
        ComponentKind::TM(w) => {
            let v = eigenspace(3, w);
            eval_span(&v, tm_dim_from(v.len(), w)?, seed, &label, trials)
        }
        ComponentKind::TA(p) => {
            let a = additive_space(3, p);
            eval_span(&a, ta_dim_from(a.len(), p)?, seed, &label, trials)
        }
        ComponentKind::Containing(_) => Ok(Evaluated {
            dim: None,
            zdim: None,
            integrating_factor: None,
        }),
    }
}

fn row(kind: &ComponentKind, comment: &str, e: &Evaluated) -> Result<TableRow> {
    let (Some(dim), Some(zdim)) = (e.dim, e.zdim) else {
        return precondition(format!("{kind} has no computed dimensions"));
    };
    Ok(TableRow {
        component: kind.to_string(),
        kind: kind.family().to_string(),
        dim,
        zdim,
        reduced: dim == zdim,
        aliases: kind.aliases(),
        comment: comment.to_string(),
    })
}

/// Builds the full report for degree-three foliations on `P^3`.
pub fn build_tables(d: u32, seed: u64, trials: usize) -> Result<AtlasReport> {
    if d != 3 {
        return precondition("the catalog covers degree 3 only");
    }
    let mut kinds: Vec<ComponentKind> = component_catalog().into_iter().map(|(k, _)| k).collect();
    for (k, _) in contained_catalog().into_iter().chain(additive_catalog()) {
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    let evaluated: BTreeMap<ComponentKind, Evaluated> = kinds
        .par_iter()
        .map(|k| evaluate(k, seed, trials).map(|e| (k.clone(), e)))
        .collect::<Result<_>>()?;

    let rows_of = |catalog: Vec<(ComponentKind, &str)>| -> Result<Vec<TableRow>> {
        catalog.iter().map(|(k, c)| row(k, c, &evaluated[k])).collect()
    };
    let tables = TableId::ALL
        .iter()
        .map(|id| {
            Ok(Table {
                name: id.name().to_string(),
                rows: rows_of(table_catalog(*id))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let components = component_catalog()
        .into_iter()
        .map(|(kind, note)| {
            let e = &evaluated[&kind];
            Ok(ComponentDescriptor {
                name: kind.to_string(),
                dim: e.dim,
                zdim: e.zdim,
                flags: ComponentFlags {
                    generically_reduced: e.dim.zip(e.zdim).map(|(a, b)| a == b),
                    has_rational_first_integral: has_rational_first_integral(&kind),
                    has_integrating_factor: e.integrating_factor,
                },
                aliases: kind.aliases(),
                leaf_degree: known_leaf_degree(&kind)?,
                derived: kind == ComponentKind::LPB,
                note: note.to_string(),
                kind,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let with_fi = components.iter().filter(|c| c.flags.has_rational_first_integral).count();
    let counts = Counts {
        without_rational_first_integral: components.len() - with_fi,
        with_rational_first_integral: with_fi,
        total: components.len(),
        non_reduced: components
            .iter()
            .filter(|c| c.flags.generically_reduced == Some(false))
            .map(|c| c.kind.header())
            .collect(),
    };

    Ok(AtlasReport {
        degree: d,
        seed,
        trials,
        tables,
        contained_candidates: rows_of(contained_catalog())?,
        additive: rows_of(additive_catalog())?,
        components,
        counts,
        model_checks: explicit_model_checks()?,
    })
}
