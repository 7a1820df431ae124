use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn foliage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foliage"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn analyze(name: &str) -> Output {
    let path = fixture(&format!("forms/{name}"));
    foliage(&["analyze", path.to_str().unwrap(), "--output", "json"])
}

#[test]
fn analyze_the_rigid_model() {
    let out = analyze("tm_2_3_5_11.json");
    assert_eq!(out.status.code(), Some(0));
    let a = stdout_json(&out);
    assert_eq!(a["integrable"], true);
    assert_eq!(a["gcd"], "1");
    assert_eq!(a["integrating_factor_dim"], 0);
    assert_eq!(a["chi"]["plane"], serde_json::json!([2, 3, 5, 11]));
    assert_eq!(a["chi"]["collinear"], false);
    assert_eq!(a["chi"]["interior"], false);
    assert_eq!(a["zdim"], 19);
}

#[test]
fn analyze_a_logarithmic_member() {
    let out = analyze("log_1_1_3.json");
    assert_eq!(out.status.code(), Some(0));
    let a = stdout_json(&out);
    assert_eq!(a["integrable"], true);
    assert!(a["integrating_factor_dim"].as_u64().unwrap() > 0);
    assert_eq!(a["zdim"], 26);
}

#[test]
fn non_integrable_forms_are_reported_not_rejected() {
    let out = analyze("contact.json");
    assert_eq!(out.status.code(), Some(0));
    let a = stdout_json(&out);
    assert_eq!(a["integrable"], false);
    assert_eq!(a["zdim"], Value::Null);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(analyze("malformed.json").status.code(), Some(2));
    assert_eq!(analyze("missing.json").status.code(), Some(2));
    assert_eq!(foliage(&["enumerate", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(foliage(&["tables", "--degree", "4"]).status.code(), Some(2));
    assert_eq!(foliage(&["frobnicate"]).status.code(), Some(2));
    let bad_golden = fixture("forms/malformed.json");
    assert_eq!(
        foliage(&["enumerate", "--degree", "1", "--golden", bad_golden.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--degree", "2", "--output", "json"][..],
        &["enumerate", "--degree", "1", "--output", "csv"],
        &["analyze", fixture("forms/log_1_1_3.json").to_str().unwrap()],
    ] {
        let first = foliage(args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, foliage(args).stdout, "{args:?}");
    }
}

#[test]
fn exploratory_degree_runs() {
    let out = foliage(&["enumerate", "--degree", "1", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["degree"], 1);
}

#[test]
fn tables_csv_has_one_record_per_row() {
    let out = foliage(&["tables", "--seed", "42", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["component", "kind", "dim", "zdim", "reduced", "aliases", "comment"]
    );
    assert_eq!(reader.records().count(), 8 + 7 + 8 + 5);
}

#[test]
fn corrupted_golden_values_are_reported() {
    let mut golden: Value = serde_json::from_str(&std::fs::read_to_string(fixture("golden.json")).unwrap()).unwrap();
    golden["tables"]["logarithmic"][4]["zdim"] = 35.into();
    golden["counts"]["total"] = 25.into();
    let path = std::env::temp_dir().join(format!("foliage-golden-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&golden).unwrap()).unwrap();

    let out = foliage(&["tables", "--output", "json", "--golden", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("logarithmic: Log(1,4) zdim 36 (expected 35)"), "{err}");
    assert!(err.contains("counts: total 24 (expected 25)"), "{err}");
    assert!(err.starts_with("2 value(s) differ"), "{err}");

    // The report is still written, and conforms to the report schema.
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json"))
            .unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let report = stdout_json(&out);
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}
