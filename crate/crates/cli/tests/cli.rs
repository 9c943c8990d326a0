use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use irum_cli::input::{load_dataset, parse_rcm};
use irum_core::bm::BMTable;
use irum_core::rational::parse_rational;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn irum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irum")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = irum(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&args)).unwrap()
}

fn stderr_of_failure(args: &[&str]) -> String {
    let out = irum(args);
    assert!(!out.status.success(), "{args:?} should fail");
    String::from_utf8(out.stderr).unwrap()
}

fn temp_dataset(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn csf_dual_verdict() {
    let out = stdout(&["irum", path(&fixture("csf_dual.json"))]);
    assert_eq!(out.lines().next(), Some("RUM: yes; correlation bounds: satisfied; I-RUM: yes"));
}

#[test]
fn perturbed_example_is_not_irum() {
    let v = json(&["irum", path(&fixture("perturbed.json"))]);
    assert_eq!(v["is_rum"], true);
    assert_eq!(v["is_irum"], false);
}

#[test]
fn alpha_bar_values() {
    let out = stdout(&["alpha-bar", "--rho-star", path(&fixture("uniform3.json")), "--family", "all"]);
    assert_eq!(out.lines().next(), Some("alpha-bar: 6/7"));
    let v = json(&[
        "alpha-bar",
        "--rho-star",
        path(&fixture("uniform_csf.json")),
        "--family",
        "file",
        path(&fixture("swap_family.json")),
    ]);
    assert_eq!(v["alpha_bar"], "2/3");
}

#[test]
fn demand_shares() {
    let out = stdout(&["demand", "--pi", "1", "0", "0.1", "0.9"]);
    assert_eq!(out.lines().next(), Some("irrational share: exactly 1/10"));
    let v = json(&["demand", "--pi", "1/2", "1/2", "1/2", "1/2"]);
    assert_eq!((v["lower"].as_str(), v["upper"].as_str()), (Some("0"), Some("1/2")));
    assert_eq!(v["max_table"]["q11"], "1/2");
    assert!(!irum(&["demand", "--pi", "1/2", "1/3", "1", "0"]).status.success());
}

#[test]
fn ab_violation_violation() {
    let v = json(&["check-rum", path(&fixture("ab_violation.json"))]);
    assert_eq!(v["is_rum"], false);
    let violations = v["violations"].as_array().unwrap();
    assert!(violations
        .iter()
        .any(|x| x["alternative"] == "a" && x["menu"] == "a|b" && x["value"] == "-1/3"));
}

#[test]
fn witness_round_trips() {
    let data = fixture("csf_dual.json");
    let rho = load_dataset(&data).unwrap();
    let v = json(&["irum-witness", path(&data)]);
    let witness = parse_rcm(rho.alternatives(), &v["witness"].to_string()).unwrap();
    assert_eq!(witness.aggregate(), rho);
    assert!(v["witness"]["support"].as_array().unwrap().iter().all(|m| m["irrational"] == true));

    let v = json(&["pirum-witness", path(&fixture("uniform3.json"))]);
    let uniform = load_dataset(&fixture("uniform3.json")).unwrap();
    let witness = parse_rcm(uniform.alternatives(), &v["witness"].to_string()).unwrap();
    assert_eq!(witness.aggregate(), uniform);
    assert_eq!(witness.irrational_members().count(), 2);
}

#[test]
fn bm_table_round_trips() {
    let data = fixture("ab_violation.json");
    let rho = load_dataset(&data).unwrap();
    let alt = rho.alternatives();
    let table = BMTable::new(&rho);
    let v = json(&["bm-table", path(&data)]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), table.entries().count());
    for e in entries {
        let a = alt.index_of(e["alternative"].as_str().unwrap()).unwrap();
        let m = alt.parse_menu(e["menu"].as_str().unwrap()).unwrap();
        let value = parse_rational(e["value"].as_str().unwrap()).unwrap();
        assert_eq!(table.get(a, m), Some(&value));
    }
}

#[test]
fn decomposition_commands() {
    let v = json(&["decompose", "--mu", path(&fixture("weak_bound_mu.json"))]);
    assert_eq!(v["irrational_weight"], "2/5");
    let dual = json(&["dual-construct", "--mu", path(&fixture("csf_dual_mu.json"))]);
    assert_eq!(dual["witness"]["support"].as_array().unwrap().len(), 2);
    let dec = json(&["dual-decompose", "--mu", path(&fixture("csf_dual_mu.json"))]);
    assert_eq!(dec["components"].as_array().unwrap().len(), 1);
    let from_data = json(&["decompose", path(&fixture("uniform3.json"))]);
    assert!(from_data["irrational_weight"].is_string());
}

#[test]
fn bounds_report() {
    let v = json(&["bounds", path(&fixture("ab_violation.json"))]);
    assert_eq!(v["correlation"]["satisfied"], false);
    assert_eq!(v["correlation"]["max"], "4/3");
    let pirum = json(&["pirum", path(&fixture("csf_dual.json"))]);
    assert_eq!(pirum["is_pirum"], true);
}

#[test]
fn input_errors_exit_nonzero() {
    let bad_sum = temp_dataset(
        r#"{"alternatives": ["a", "b"], "choices": [{"menu": ["a", "b"], "probs": {"a": "1/2", "b": "49/100"}}]}"#,
    );
    let err = stderr_of_failure(&["check-rum", bad_sum.path().to_str().unwrap()]);
    assert!(err.contains("menu probabilities must sum to 1"), "{err}");

    let missing = temp_dataset(
        r#"{"alternatives": ["a", "b", "c"], "choices": [{"menu": ["a", "b"], "probs": {"a": "1"}}]}"#,
    );
    assert!(stderr_of_failure(&["check-rum", missing.path().to_str().unwrap()]).contains("missing menu"));

    let small = temp_dataset(r#"{"alternatives": ["a", "b"], "choices": [{"menu": ["a"], "probs": {"a": "1"}}]}"#);
    assert!(stderr_of_failure(&["check-rum", small.path().to_str().unwrap()]).contains("fewer than 2"));

    assert!(stderr_of_failure(&["check-rum", "/nonexistent/data.json"]).contains("cannot read"));
}

#[test]
fn size_guards() {
    let data = fixture("csf_dual.json");
    let err = stderr_of_failure(&["irum-witness", "--max-n", "5", path(&data)]);
    assert!(err.contains("limit of 4"), "{err}");
    let err = stderr_of_failure(&["irum", "--max-n", "2", path(&data)]);
    assert!(err.contains("at most 2"), "{err}");
}

#[test]
fn verdicts_exit_zero_and_are_deterministic() {
    let data = fixture("perturbed.json");
    let first = stdout(&["irum-witness", path(&data)]);
    assert_eq!(first, stdout(&["irum-witness", path(&data)]));
    let two = temp_dataset(r#"{"alternatives": ["x", "y"], "choices": [{"menu": ["x", "y"], "probs": {"x": "1/3", "y": "2/3"}}]}"#);
    let out = stdout(&["irum", two.path().to_str().unwrap()]);
    assert!(out.contains("I-RUM: no") && out.contains("n=2"), "{out}");
}

#[test]
fn decimals_flag() {
    let out = stdout(&["alpha-bar", "--rho-star", path(&fixture("uniform3.json")), "--decimals", "3"]);
    assert!(out.starts_with("alpha-bar: 6/7 (~0.857)"), "{out}");
}
