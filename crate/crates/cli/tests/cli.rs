use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn slq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn analyze_b2() {
    let o = slq(&["analyze", &fixture("b2.tbl")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("idempotents [0, 3, 4]"));
    assert!(text.contains("S(S) [0, 3, 4]"));
    assert!(text.contains("completely-0-simple      holds"));
}

#[test]
fn analyze_z2_single_classes() {
    let o = slq(&["analyze", &fixture("z2.tbl")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for line in ["L  {0 1}", "J  {0 1}", "L* {0 1}", "J* {0 1}"] {
        assert!(text.contains(line), "missing {line:?} in {text}");
    }
}

#[test]
fn analyze_malformed_is_input_error() {
    let dir = tempdir();
    let bad = dir.join("bad.tbl");
    std::fs::write(&bad, "2\n0 1\n").unwrap();
    let o = slq(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("slq-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn subset_file(name: &str, content: &str) -> String {
    let path = tempdir().join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_order_b2_straight() {
    let sub = subset_file("b2full.subset", "0 1 2 3 4\n");
    let o = slq(&["check-order", &fixture("b2.tbl"), &sub, "--straight"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_order_idempotent_in_z2_fails() {
    let sub = subset_file("z2e.subset", "0\n");
    let o = slq(&["check-order", &fixture("z2.tbl"), &sub]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_order_group_fully_stratified() {
    let sub = subset_file("klein.subset", "0 1 2 3\n");
    let o = slq(&[
        "check-order",
        &fixture("klein.tbl"),
        &sub,
        "--fully-stratified",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn check_order_json_schema() {
    let sub = subset_file("z4full.subset", "0 1 2 3\n");
    let o = slq(&[
        "check-order",
        &fixture("z4.tbl"),
        &sub,
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "slq-report/1");
    assert_eq!(v["is_straight"], true);
}

#[test]
fn check_starpair_group_passes() {
    let o = slq(&["check-starpair", &fixture("z4.tbl")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Gi"));
}

#[test]
fn check_starpair_null_fails() {
    let o = slq(&["check-starpair", &fixture("null2.tbl")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAILS"));
}

#[test]
fn decompose_b2_by_j() {
    let o = slq(&["decompose", &fixture("b2.tbl"), "--by", "j", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let classes = v["decomposition"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(v["decomposition"]["poset"]["leq"][0], "10");
    assert_eq!(v["decomposition"]["poset"]["leq"][1], "11");
}

#[test]
fn decompose_group_by_jstar() {
    let o = slq(&["decompose", &fixture("klein.tbl"), "--by", "jstar", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decomposition"]["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn decompose_check_roundtrip() {
    let o = slq(&["decompose", &fixture("b2.tbl"), "--by", "j", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let path = tempdir().join("b2.decomp.json");
    std::fs::write(&path, serde_json::to_string(&v["decomposition"]).unwrap()).unwrap();
    let o2 = slq(&["decompose", &fixture("b2.tbl"), "--check", path.to_str().unwrap()]);
    assert_eq!(code(&o2), 0);
}

#[test]
fn decompose_bad_partition_rejected() {
    let path = tempdir().join("bad.decomp.json");
    std::fs::write(
        &path,
        r#"{"poset":{"size":2,"leq":["10","11"]},"classes":[[0,1],[2,3,4]]}"#,
    )
    .unwrap();
    let o = slq(&["decompose", &fixture("b2.tbl"), "--check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn harness_bundled_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for theorem in ["1.3", "2.x", "4", "5.4", "6.1", "7.1", "8.1"] {
        let o = slq(&[
            "harness",
            "--corpus",
            dir.to_str().unwrap(),
            "--theorem",
            theorem,
            "--budget-order",
            "5",
        ]);
        assert_eq!(code(&o), 0, "theorem {theorem}: {}", stdout(&o));
        assert!(stdout(&o).contains("0 hard failures"));
    }
}

#[test]
fn harness_empty_corpus() {
    let dir = tempdir().join("empty-corpus");
    std::fs::create_dir_all(&dir).unwrap();
    let o = slq(&["harness", "--corpus", dir.to_str().unwrap(), "--theorem", "8.1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 instances"));
}

#[test]
fn enumerate_counts_and_budget() {
    let o = slq(&["enumerate", "2"]);
    assert_eq!(code(&o), 0);
    let blocks = stdout(&o)
        .split("\n\n")
        .filter(|b| !b.trim().is_empty() && !b.trim_start().starts_with('#'))
        .count();
    assert_eq!(blocks, 8);

    let o = slq(&["enumerate", "7"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn find_quotient_clifford() {
    let o = slq(&[
        "find-quotient",
        &fixture("clifford4.tbl"),
        "--pair",
        "green",
        "--budget-order",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["s_members"].as_array().unwrap().len(), 4);
}

#[test]
fn find_quotient_none_for_null() {
    let o = slq(&[
        "find-quotient",
        &fixture("null2.tbl"),
        "--budget-order",
        "3",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn unknown_verb_rejected() {
    let o = slq(&["frobnicate"]);
    assert_eq!(code(&o), 2);
}
