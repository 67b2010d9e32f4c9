//! End-to-end tests of the `fubini` binary: the exit-code contract
//! (0 pass, 1 verification failure, 2 usage/domain error, 3 internal),
//! output schemas, atomic file output, and run-to-run determinism
//! (acceptance criterion 7).

use std::process::{Command, Output};

fn fubini(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fubini"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn compute_examples() {
    let out = fubini(&["compute", "pbernoulli", "--n", "1", "--p", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "-1/3");

    let out = fubini(&["compute", "geom", "--n", "0", "--r", "5", "--y", "7/3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1");

    let out = fubini(&["compute", "stirling2r", "--n", "4", "--k", "2", "--r", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "7");

    let out = fubini(&["compute", "geom", "--n", "3", "--y", "-1/2"]);
    assert_eq!(stdout(&out).trim(), "1/4");

    // usage error: missing --k
    let out = fubini(&["compute", "stirling2r", "--n", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn compute_table_is_rfc4180_csv() {
    let out = fubini(&[
        "compute",
        "stirling2r",
        "--n",
        "4",
        "--k",
        "2",
        "--r",
        "0",
        "--table",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.starts_with("n,k,value\r\n"),
        "header row with CRLF: {text:?}"
    );
    assert!(text.contains("4,2,7\r\n"));

    let out = fubini(&["compute", "bernoulli", "--n", "4", "--table"]);
    let text = stdout(&out);
    assert!(text.contains("4,-1/30"));
}

#[test]
fn compute_json_schema() {
    let out = fubini(&["compute", "pbernoulli", "--n", "5", "--p", "5", "--json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["result"]["value"], "2/77");
    assert!(doc["manifest"]["timestamp"].is_string());
    assert_eq!(doc["manifest"]["catalog_version"], "1.0.0");
}

#[test]
fn verify_identity_and_exit_codes() {
    let out = fubini(&[
        "verify",
        "--identity",
        "ID-11",
        "--n-max",
        "6",
        "--r-max",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["totals"]["fail"], 0);
    assert!(doc["totals"]["pass"].as_u64().unwrap() > 0);
    assert!(doc["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["id"] == "ID-11"));

    let out = fubini(&["verify", "--identity", "NOPE"]);
    assert_eq!(code(&out), 2);

    let out = fubini(&["verify"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_reports_inapplicable_without_failing() {
    // y = 0 is singular for ID-16; it must be tallied, not failed
    let out = fubini(&[
        "verify",
        "--identity",
        "ID-16",
        "--n-max",
        "2",
        "--r-max",
        "2",
        "--y-set",
        "0,1/2",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["totals"]["fail"], 0);
    assert!(doc["totals"]["inapplicable"].as_u64().unwrap() > 0);
}

#[test]
fn congruence_examples() {
    let out = fubini(&["congruence", "--check", "C-L1", "--primes", "3..97"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["totals"]["fail"], 0);

    // an empty prime range is a usage error
    let out = fubini(&["congruence", "--check", "C-L1", "--primes", "4..4"]);
    assert_eq!(code(&out), 2);

    let out = fubini(&["congruence", "--check", "C-NOPE"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn congruence_qq_reports_failure_exit() {
    // The 1/12 residue claim is false (observed 0); the checker reports
    // fail per case and the run exits 1 by the exit-code contract.
    let out = fubini(&["congruence", "--check", "C-QQ", "--primes", "5..31"]);
    assert_eq!(code(&out), 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["totals"]["fail"], doc["totals"]["total"]);
    for case in doc["cases"].as_array().unwrap() {
        assert_eq!(case["lhs"], 0, "observed residue of qB_qq");
    }
}

#[test]
fn series_examples() {
    let out = fubini(&[
        "series", "--op", "dobinski", "--n", "2", "--r", "1", "--y", "1/2", "--tol", "1e-30",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("containment = pass"));
    assert!(text.contains("closed_form = 12"));

    let out = fubini(&[
        "series", "--op", "dobinski", "--n", "1", "--r", "1", "--y", "2",
    ]);
    assert_eq!(code(&out), 2);

    let out = fubini(&[
        "series", "--op", "rbell", "--n", "1", "--r", "2", "--y", "1", "--tol", "1e-20",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("containment = pass"));

    let out = fubini(&[
        "series", "--op", "exp", "--y", "1", "--tol", "1e-25", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert!(doc["result"]["tail_radius"].is_string());
}

#[test]
fn out_flag_writes_atomically() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("report.json");
    let out = fubini(&[
        "verify",
        "--identity",
        "ID-24",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let content = std::fs::read_to_string(&path).expect("file written");
    let doc: serde_json::Value = serde_json::from_str(&content).expect("valid json");
    assert_eq!(doc["totals"]["fail"], 0);
    // no temp file left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|line| !line.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Acceptance criterion 7: repeated `verify --all` runs produce
/// byte-identical case listings once the manifest timestamp is excluded.
#[test]
fn criterion_7_determinism() {
    let t0 = std::time::Instant::now();
    let first = fubini(&["verify", "--all", "--default-grid"]);
    let second = fubini(&["verify", "--all", "--default-grid"]);
    assert_eq!(code(&first), 0, "default-grid catalog run must pass");
    assert_eq!(code(&second), 0);
    let a = strip_timestamp(&stdout(&first));
    let b = strip_timestamp(&stdout(&second));
    assert!(!a.is_empty());
    assert_eq!(a, b, "verify --all output differs between runs");
    println!(
        "[PASS] criterion 7: byte-identical verify --all runs ({:.2}s)",
        t0.elapsed().as_secs_f64()
    );
}

#[test]
fn list_flags() {
    let out = fubini(&["verify", "--list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for id in ["ID-14", "ID-12/17", "ID-TAN"] {
        assert!(text.lines().any(|l| l == id));
    }
    let out = fubini(&["congruence", "--list"]);
    assert!(stdout(&out).lines().any(|l| l == "C-VSCP"));
}
