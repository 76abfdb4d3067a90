mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use common::fixture_dir;

fn pentagon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentagon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(rel: &str) -> String {
    fixture_dir().join(rel).to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_exit_codes() {
    let o = pentagon(&["validate", &fx("semigroups/s3.json"), "--clifford"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("clifford: yes"));

    let o = pentagon(&["validate", &fx("semigroups/left_zero2.json"), "--clifford"]);
    assert_eq!(code(&o), 2);
    let o = pentagon(&["validate", &fx("semigroups/left_zero2.json")]);
    assert_eq!(code(&o), 0);

    let o = pentagon(&["validate", &fx("invalid/nonassociative.json")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("(1·0)·1"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    assert_eq!(
        code(&pentagon(&["validate", &fx("invalid/out_of_range.json")])),
        1
    );
    assert_eq!(code(&pentagon(&["validate", "/nonexistent/x.json"])), 1);
    assert_eq!(code(&pentagon(&["validate", "fixture:nope"])), 1);
    assert_eq!(code(&pentagon(&["validate", "fixture:brandt5"])), 0);
}

#[test]
fn malformed_json_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"table\": [[0, 1], ").unwrap();
    let o = pentagon(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn check_reports_flags() {
    let o = pentagon(&["check", &fx("solutions/s3_gamma.json")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("flags: commutative, e-invariant"), "{out}");
    assert!(out.contains("pentagon relation: ok"));

    let o = pentagon(&["check", &fx("solutions/s3_neither.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("flags: neither"));

    let o = pentagon(&["check", &fx("solutions/s3_broken.json")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("axioms: fail"));
}

#[test]
fn json_and_quiet_modes() {
    let o = pentagon(&["--json", "check", &fx("solutions/s3_neither.json")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["labels"], serde_json::json!(["neither"]));
    assert_eq!(v["flags"]["e_invariant"], Value::Bool(false));
    assert_eq!(v["pentagon"], Value::Bool(true));

    let o = pentagon(&["--quiet", "check", &fx("solutions/s3_broken.json")]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());

    let o = pentagon(&["--json", "analyze", "fixture:z4_over_z2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["homs"][0]["values"], serde_json::json!([4, 5, 4, 5]));
}

#[test]
fn kernel_of_the_published_examples() {
    let o = pentagon(&["kernel", &fx("solutions/s3_gamma.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("normal subsemigroup: yes"));
    let o = pentagon(&["--json", "kernel", &fx("solutions/s3_neither.json")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kernel"], serde_json::json!([0, 1, 2]));
}

#[test]
fn constructions() {
    let o = pentagon(&[
        "--json",
        "construct",
        "invariant",
        "--semigroup",
        &fx("semigroups/s3.json"),
        "--congruence",
        &fx("constructions/s3_congruence.json"),
        "--mu",
        &fx("constructions/s3_mu.json"),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["solution"]["theta"],
        serde_json::json!([[1, 1, 2], [1, 1, 2], [1, 1, 2]])
    );

    let o = pentagon(&[
        "--json",
        "construct",
        "fixed",
        "--family",
        &fx("constructions/s3_family.json"),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["solution"]["theta"],
        serde_json::json!([[0, 1, 2], [0, 1, 2], [0, 1, 2]])
    );
    assert_eq!(v["kernel_union"]["upward_identities"], Value::Bool(true));

    let o = pentagon(&[
        "construct",
        "fixed-epi",
        "--spec",
        &fx("constructions/z4_over_z2_epi.json"),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("e-fixed"));
}

#[test]
fn failed_construction_conditions_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let mu = dir.path().join("mu.json");
    // 2 lies outside the class of 0 and 1
    std::fs::write(&mu, r#"{"mu": [2, 1, 2]}"#).unwrap();
    let o = pentagon(&[
        "construct",
        "invariant",
        "--semigroup",
        "fixture:s3",
        "--congruence",
        &fx("constructions/s3_congruence.json"),
        "--mu",
        mu.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));

    let congruence = dir.path().join("c.json");
    std::fs::write(&congruence, r#"{"classes": [0, 1, 0]}"#).unwrap();
    let o = pentagon(&[
        "construct",
        "invariant",
        "--semigroup",
        "fixture:s3",
        "--congruence",
        congruence.to_str().unwrap(),
        "--mu",
        &fx("constructions/s3_mu.json"),
    ]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn enumerated_files_check_clean() {
    let dir = tempfile::tempdir().unwrap();
    let o = pentagon(&[
        "enumerate",
        "fixture:z4_over_z2",
        "--up-to-iso",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("14 solutions on z4_over_z2"));
    let mut files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 14);
    for f in &files {
        let o = pentagon(&["--quiet", "check", f.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}: {}", f.display(), stderr(&o));
    }
}

#[test]
fn enumerate_filters() {
    let o = pentagon(&["--json", "enumerate", "fixture:s3", "--filter", "neither"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 4);
    let o = pentagon(&["enumerate", "fixture:s3", "--filter", "bogus"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn census_reports_bad_files_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["z2.json", "s3.json"] {
        std::fs::copy(
            Path::new(&fx("semigroups")).join(name),
            dir.path().join(name),
        )
        .unwrap();
    }
    std::fs::copy(
        fx("invalid/nonassociative.json"),
        dir.path().join("broken.json"),
    )
    .unwrap();
    let o = pentagon(&["census", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("broken.json"));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3, "{out}");
    assert!(lines[1].starts_with("s3,3,2,9,9,"));
    assert!(lines[2].starts_with("z2,2,1,2,2,"));
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pentagon"))
        .args(["--json", "enumerate", "fixture:diamond"])
        .env("PENTAGON_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 116);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&pentagon(&["--help"])), 0);
    assert_eq!(code(&pentagon(&["frobnicate"])), 1);
    assert_eq!(code(&pentagon(&["check"])), 1);
}
