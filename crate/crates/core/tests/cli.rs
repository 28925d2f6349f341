//! End-to-end runs of the binary: output shape, exit codes, determinism.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orient-shatter"))
}

fn graph_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const K3: &str = r#"{"vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#;

#[test]
fn analyze_k3_cyclic() {
    let f = graph_file(K3);
    let out = bin()
        .args(["analyze", f.path().to_str().unwrap(), "cyclic"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("orientations: 2"), "{text}");
    assert!(text.contains("dual_vc: 0"), "{text}");
}

#[test]
fn analyze_flow_with_capacities() {
    let f = graph_file(r#"{"vertices":3,"edges":[[0,1],[1,2]],"capacities":[1,1]}"#);
    let out = bin()
        .args(["analyze", f.path().to_str().unwrap(), "flow:0,2,1", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("1,0,0,1,1,true")), "{text}");
}

#[test]
fn verify_single_graph_all_suites() {
    let f = graph_file(K3);
    let out = bin()
        .args(["verify", "--graph", f.path().to_str().unwrap(), "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"), "{}", stdout(&out));
}

#[test]
fn verify_deterministic_under_threads() {
    let f = graph_file(K3);
    let run = |threads: &str| {
        let out = bin()
            .args(["verify", "--graph", f.path().to_str().unwrap(), "--suite", "cyclic,flow"])
            .env("ORIENT_SHATTER_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn corrupt_oracle_exits_one() {
    let f = graph_file(K3);
    let out = bin()
        .args([
            "verify",
            "--graph",
            f.path().to_str().unwrap(),
            "--suite",
            "cyclic",
            "--corrupt-oracle",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("corrupt-oracle-self-test"));
}

#[test]
fn bad_inputs_exit_two() {
    // malformed JSON
    let f = graph_file("{not json");
    let out = bin()
        .args(["analyze", f.path().to_str().unwrap(), "cyclic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // vertex out of range in the property
    let f = graph_file(K3);
    let out = bin()
        .args(["analyze", f.path().to_str().unwrap(), "flow:0,9,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // weight array length mismatch
    let f = graph_file(r#"{"vertices":3,"edges":[[0,1],[1,2]],"capacities":[1]}"#);
    let out = bin()
        .args(["analyze", f.path().to_str().unwrap(), "cyclic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // non-simple graph
    let f = graph_file(r#"{"vertices":2,"edges":[[0,1],[1,0]]}"#);
    let out = bin()
        .args(["analyze", f.path().to_str().unwrap(), "cyclic"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_verify_format() {
    let f = graph_file(K3);
    let out = bin()
        .args([
            "verify",
            "--graph",
            f.path().to_str().unwrap(),
            "--suite",
            "cyclic",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("claim,inputs,verdict,witness"));
    assert!(lines.next().unwrap().starts_with("cyclic-orientations,"));
}
