//! Acceptance criteria 1 to 9, one PASS/FAIL line each, exact equality throughout.

use std::collections::BTreeSet;
use std::process::{Command, Stdio};

use foliage::additive::{additive_space_in, beta_kernel_in, ta_dim_from, NilpotentData};
use foliage::atlas::explicit_model_checks;
use foliage::exactalg::{bareiss, gauss, Matrix};
use foliage::extcalc::{subsets, PolyForm, PolyVField};
use foliage::mpoly::{MPoly, Monomial};
use foliage::projforms::{sampled_zariski_dim, FormSpaceBasis};
use foliage::scalar::{q, qi};
use foliage::torus::{eigenspace, involution, is_eigenform, tm_dim, WeightData};
use foliage::{rng, Rational};
use num_traits::Zero;
use rand::Rng;
use serde_json::Value;

const SEED: &str = "42";
const TRIALS: &str = "3";

const LONGLIST: &str = "(0,1,1;2) (0,1,1;3) (0,1,2;3) (1,1,2;5) (1,2,2;7) (1,2,3;6) (1,2,3;7) \
    (1,2,3;8) (1,2,3;9) (1,2,4;7) (1,2,4;9) (1,2,5;7) (1,2,5;11) (1,2,5;12) \
    (1,3,4;7) (1,3,4;10) (1,3,4;13) (1,3,5;8) (1,3,5;11) (1,3,7;10) (1,4,6;13) \
    (2,3,4;11) (2,3,4;13) (2,3,5;11) (2,3,5;14) (2,3,7;16) (2,4,5;14) (2,4,5;17) \
    (2,5,6;17) (3,4,5;13) (3,4,5;14) (3,4,5;18) (4,5,7;19) (4,6,7;25)";
const KUPKA: &str = "(1,2,3;7) (1,2,3;8) (1,2,4;7) (1,2,4;9) (1,3,7;10) (1,4,6;13) \
    (2,3,4;11) (2,3,4;13) (2,3,7;16) (2,5,6;17) (4,5,7;19) (4,6,7;25)";
const EXTRA_KUPKA: &str = "(0,1,2;3) (1,1,2;5) (1,2,2;7)";

fn weights(list: &str) -> BTreeSet<WeightData> {
    list.split_whitespace().map(|s| s.parse().expect("weights")).collect()
}

struct Criterion {
    id: u8,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u8, title: &'static str) -> Self {
        Criterion { id, title, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{label}: got {got:?}, expected {want:?}"));
        }
    }

    fn print(&self) -> bool {
        if self.failures.is_empty() {
            println!("PASS {} {}", self.id, self.title);
        } else {
            println!("FAIL {} {}: {}", self.id, self.title, self.failures.join("; "));
        }
        self.failures.is_empty()
    }
}

fn spawn(args: &[&str]) -> std::process::Child {
    Command::new(env!("CARGO_BIN_EXE_foliage"))
        .args(args)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts")
}

/// Runs to completion and parses stdout; failures are recorded on `c`.
fn finish(child: std::process::Child, c: &mut Criterion) -> Value {
    let out = child.wait_with_output().expect("binary finishes");
    c.check(out.status.code() == Some(0), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim())
    });
    serde_json::from_slice(&out.stdout).unwrap_or(Value::Null)
}

fn set_diff(c: &mut Criterion, label: &str, got: &BTreeSet<WeightData>, want: &BTreeSet<WeightData>) {
    let missing: Vec<String> = want.difference(got).map(|w| w.to_string()).collect();
    let extra: Vec<String> = got.difference(want).map(|w| w.to_string()).collect();
    c.check(missing.is_empty() && extra.is_empty(), || {
        format!("{label}: missing {missing:?}, unexpected {extra:?}")
    });
}

fn enumeration(c1: &mut Criterion, c2: &mut Criterion, json: &Value) -> Vec<WeightData> {
    let records = json["quadruples"].as_array().cloned().unwrap_or_default();
    let listed: Vec<WeightData> = records
        .iter()
        .filter_map(|r| serde_json::from_value(r["weights"].clone()).ok())
        .collect();
    let set: BTreeSet<WeightData> = listed.iter().copied().collect();
    c1.expect_eq("count", listed.len(), 34);
    set_diff(c1, "quadruples", &set, &weights(LONGLIST));

    let with_kind = |kind: &str| -> BTreeSet<WeightData> {
        records
            .iter()
            .filter(|r| r["kupka"]["kind"] == kind)
            .filter_map(|r| serde_json::from_value(r["weights"].clone()).ok())
            .collect()
    };
    let family = with_kind("family");
    c2.check(family.iter().all(WeightData::is_strict), || "family match with non-strict weights".into());
    set_diff(c2, "arithmetic criterion", &family, &weights(KUPKA));
    set_diff(c2, "recorded extras", &with_kind("recorded_extra"), &weights(EXTRA_KUPKA));
    listed
}

/// `(component, aliases, dim, zdim)` of every row of one table.
fn rows(table: &Value) -> Vec<(String, Vec<String>, u64, u64)> {
    table["rows"]
        .as_array()
        .or(table.as_array())
        .map(|rows| {
            rows.iter()
                .map(|r| {
                    let aliases = r["aliases"]
                        .as_array()
                        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
                        .unwrap_or_default();
                    (
                        r["component"].as_str().unwrap_or_default().to_string(),
                        aliases,
                        r["dim"].as_u64().unwrap_or(0),
                        r["zdim"].as_u64().unwrap_or(0),
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

fn table<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["tables"]
        .as_array()
        .and_then(|ts| ts.iter().find(|t| t["name"] == name))
        .unwrap_or(&Value::Null)
}

fn dims(rows: &[(String, Vec<String>, u64, u64)]) -> Vec<(u64, u64)> {
    rows.iter().map(|r| (r.2, r.3)).collect()
}

fn tables(c3: &mut Criterion, c4: &mut Criterion, c5: &mut Criterion, c8: &mut Criterion, report: &Value) {
    let log = rows(table(report, "logarithmic"));
    c3.expect_eq(
        "components",
        log.iter().map(|r| r.0.as_str()).collect::<Vec<_>>(),
        vec!["Log(1,1,1,1,1)", "Log(1,1,1,2)", "Log(1,1,3)", "Log(1,2,2)", "Log(1,4)", "Log(2,3)", "SLog(2,5)", "SLog(3,4)"],
    );
    c3.expect_eq(
        "dim/Zdim",
        dims(&log),
        vec![(18, 18), (20, 20), (26, 26), (22, 22), (36, 36), (28, 28), (19, 19), (16, 16)],
    );

    let split = rows(table(report, "split"));
    c4.expect_eq("dim/Zdim", dims(&split), vec![(16, 16), (16, 16), (15, 15), (15, 15), (14, 14), (14, 14), (14, 14)]);
    let headers: Vec<String> = split.iter().map(|r| std::iter::once(r.0.clone()).chain(r.1.clone()).collect::<Vec<_>>().join("=")).collect();
    c4.expect_eq(
        "alias pairs",
        headers,
        [
            "TM₃(0,1,2;3)=TM₃(1,2,2;7)",
            "TM₃(1,2,3;7)=TM₃(1,2,3;8)",
            "TM₃(1,2,4;7)=TM₃(2,3,4;13)",
            "TM₃(1,2,4;9)=TM₃(2,3,4;11)",
            "TM₃(1,3,7;10)=TM₃(4,6,7;25)",
            "TM₃(1,4,6;13)=TM₃(2,5,6;17)",
            "TM₃(2,3,7;16)=TM₃(4,5,7;19)",
        ]
        .map(String::from)
        .to_vec(),
    );

    let nonrigid = rows(table(report, "nonintegrable_nonrigid"));
    let rigid = rows(table(report, "nonintegrable_rigid"));
    c5.expect_eq(
        "nonrigid dim/Zdim",
        dims(&nonrigid),
        vec![(17, 20), (16, 16), (21, 21), (15, 19), (16, 16), (15, 15), (15, 15), (15, 17)],
    );
    c5.expect_eq("rigid dim/Zdim", dims(&rigid), vec![(14, 19), (14, 19), (14, 14), (14, 19), (14, 14)]);
    let flagged: BTreeSet<String> = report["tables"]
        .as_array()
        .into_iter()
        .flatten()
        .flat_map(|t| t["rows"].as_array().cloned().unwrap_or_default())
        .filter(|r| r["reduced"] == false)
        .filter_map(|r| r["component"].as_str().map(String::from))
        .collect();
    let six: BTreeSet<String> = ["(0,1,1;2)", "(1,2,3;6)", "(1,3,4;10)", "(1,2,5;11)", "(1,2,5;12)", "(2,3,5;11)"]
        .iter()
        .map(|w| format!("TM₃{w}"))
        .collect();
    c5.expect_eq("non-reduced rows", flagged, six);

    let counts = &report["counts"];
    c8.expect_eq("without rational first integral", counts["without_rational_first_integral"].as_u64(), Some(18));
    c8.expect_eq("total", counts["total"].as_u64(), Some(24));
    let contained = rows(&report["contained_candidates"]);
    c8.expect_eq(
        "contained candidates",
        contained.iter().map(|r| (r.0.as_str(), r.2, r.3)).collect::<Vec<_>>(),
        vec![
            ("TM₃(1,2,5;7)", 14, 19),
            ("TM₃(1,3,4;7)", 14, 21),
            ("TM₃(1,3,5;11)", 14, 19),
            ("TM₃(1,3,7;10)", 14, 14),
            ("TM₃(1,3,5;8)", 14, 19),
        ],
    );
    c8.check(split.iter().any(|r| r.0 == "TM₃(1,3,7;10)"), || "TM₃(1,3,7;10) missing from the split table".into());
}

fn additive(c: &mut Criterion) {
    let basis = FormSpaceBasis::new(3, 3);
    for (a, b, dim, zdim) in [(1, 0, 20, 21), (0, 1, 18, 25)] {
        let p = NilpotentData::new(a, b).expect("nilpotent data");
        let space = additive_space_in(&basis, &p);
        c.expect_eq(&format!("ta_dim {p}"), ta_dim_from(space.len(), &p).ok(), Some(dim));
        c.expect_eq(&format!("Zdim {p}"), sampled_zariski_dim(&space, 42, "acceptance/additive", 3).ok(), Some(zdim));
    }
    let kernel_dims: Vec<usize> = [qi(0), qi(1), qi(2), q(1, 2), qi(-1)]
        .iter()
        .map(|e| beta_kernel_in(&basis, e).len())
        .collect();
    c.check(kernel_dims.iter().all(|&k| k == kernel_dims[0]), || format!("kernel dims vary: {kernel_dims:?}"));
    let a111 = additive_space_in(&basis, &NilpotentData::new(1, 1).expect("nilpotent data")).len();
    c.expect_eq("kernel at 0 vs A(1,1,1)", kernel_dims[0], a111);
    let v1237 = eigenspace(3, &"(1,2,3;7)".parse().expect("weights")).len();
    c.expect_eq("kernel at 1 vs V(1,2,3;7)", kernel_dims[1], v1237);
}

fn explicit(c: &mut Criterion) {
    match explicit_model_checks() {
        Ok(checks) => {
            c.check(!checks.is_empty(), || "no checks ran".into());
            for m in checks.iter().filter(|m| !m.holds) {
                c.failures.push(format!("{}: {}", m.model, m.statement));
            }
        }
        Err(e) => c.failures.push(e.to_string()),
    }
}

fn random_poly(r: &mut impl Rng, nv: usize, max_exp: u32) -> MPoly<Rational> {
    let terms = r.gen_range(0..5);
    MPoly::from_terms(
        nv,
        (0..terms).map(|_| {
            let e: Vec<u32> = (0..nv).map(|_| r.gen_range(0..=max_exp)).collect();
            (Monomial::new(&e), qi(r.gen_range(-6..=6)))
        }),
    )
}

fn random_form(r: &mut impl Rng, k: usize) -> PolyForm<Rational> {
    let mut f = PolyForm::zero(4, k);
    for s in subsets(4, k) {
        f.set(s, random_poly(r, 4, 2));
    }
    f
}

fn properties(c: &mut Criterion, longlist: &[WeightData]) {
    let sign = |k: usize| qi(if k % 2 == 0 { 1 } else { -1 });
    for i in 0..100 {
        let r = &mut rng::stream(42, &format!("acceptance/forms/{i}"));
        let k = i % 3;
        let (a, b) = (random_form(r, k), random_form(r, 1));
        let v = PolyVField::new((0..4).map(|_| random_poly(r, 4, 1)).collect());
        c.check(a.d().d().is_zero(), || format!("d^2 != 0 on form {i}"));
        let leibniz = &a.d().wedge(&b) + &a.wedge(&b.d()).scale(&sign(k));
        c.check(a.wedge(&b).d() == leibniz, || format!("Leibniz fails on form {i}"));
        let cartan = match k {
            0 => a.d().contract(&v).expect("1-form"),
            _ => &a.d().contract(&v).expect("positive degree") + &a.contract(&v).expect("positive degree").d(),
        };
        c.check(a.lie(&v) == cartan, || format!("Cartan fails on form {i}"));
    }
    for i in 0..100 {
        let r = &mut rng::stream(42, &format!("acceptance/matrices/{i}"));
        let (rows, cols) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let entries: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| if r.gen_bool(0.4) { Rational::zero() } else { q(r.gen_range(-9..=9), r.gen_range(1..=4)) }).collect())
            .collect();
        let m = Matrix::from_rows(cols, entries);
        let kernel = m.kernel_basis();
        let consistent = m.rank() + kernel.len() == cols
            && kernel.iter().all(|x| m.mul_vec(x).iter().all(Zero::is_zero))
            && bareiss::rank(&m) == gauss::rank(&m)
            && m.transpose().rank() == m.rank();
        c.check(consistent, || format!("rank/kernel inconsistent on matrix {i}"));
    }
    for w in longlist {
        let v = eigenspace(3, w);
        c.check(v.iter().all(|f| is_eigenform(f.form(), w)), || format!("eigenspace equations fail for {w}"));
        match involution(3, w) {
            Ok(iw) => {
                let same = v.len() == eigenspace(3, &iw).len() && tm_dim(3, w).ok() == tm_dim(3, &iw).ok();
                c.check(same, || format!("dimensions differ between {w} and {iw}"));
            }
            Err(e) => c.failures.push(format!("involution of {w}: {e}")),
        }
    }
}

#[test]
fn acceptance_criteria() {
    let mut c1 = Criterion::new(1, "enumeration returns the 34 quadruples");
    let mut c2 = Criterion::new(2, "Kupka criterion gives the 12 quadruples plus 3 recorded extras");
    let mut c3 = Criterion::new(3, "logarithmic table dims/Zdims");
    let mut c4 = Criterion::new(4, "split table dims/Zdims and alias pairs");
    let mut c5 = Criterion::new(5, "nonintegrable tables dims/Zdims and non-reduced flags");
    let mut c6 = Criterion::new(6, "additive dims, Zdims and beta-kernel degeneration");
    let mut c7 = Criterion::new(7, "explicit forms: integrability, first integrals, invariant curves");
    let mut c8 = Criterion::new(8, "aggregate counts and contained candidates");
    let mut c9 = Criterion::new(9, "property suites");

    let enumerate = spawn(&["enumerate", "--degree", "3", "--seed", SEED, "--trials", TRIALS, "--output", "json"]);
    let report = spawn(&["tables", "--seed", SEED, "--trials", TRIALS, "--output", "json"]);

    additive(&mut c6);
    explicit(&mut c7);

    let enumerated = finish(enumerate, &mut c1);
    c2.failures.extend(c1.failures.iter().cloned());
    let longlist = enumeration(&mut c1, &mut c2, &enumerated);
    properties(&mut c9, &longlist);

    let mut run = Criterion::new(0, "tables run");
    let report = finish(report, &mut run);
    for c in [&mut c3, &mut c4, &mut c5, &mut c8] {
        c.failures.extend(run.failures.iter().cloned());
    }
    tables(&mut c3, &mut c4, &mut c5, &mut c8, &report);

    let passed: Vec<bool> = [&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9].iter().map(|c| c.print()).collect();
    assert!(passed.iter().all(|&p| p), "some acceptance criteria failed");
}
