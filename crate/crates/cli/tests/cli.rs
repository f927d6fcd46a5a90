use std::path::Path;
use std::process::{Command, Output};

fn unstalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unstalg"))
        .args(args)
        .env_remove("UNSTALG_BOUND")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn wu_text_is_byte_stable() {
    let out = unstalg(&["run", "wu", "--bound", "12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("wu_12.txt"));
}

#[test]
fn wu_json_is_byte_stable() {
    let out = unstalg(&["run", "wu", "--bound", "12", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("wu_12.json"));
}

#[test]
fn relations_text_is_byte_stable() {
    let out = unstalg(&["run", "relations", "--bound", "12"]);
    assert_eq!(stdout(&out), golden("relations_12.txt"));
}

#[test]
fn list_is_byte_stable() {
    assert_eq!(stdout(&unstalg(&["list"])), golden("list.txt"));
}

#[test]
fn calc_examples() {
    assert_eq!(stdout(&unstalg(&["calc", "Sq^1 | w4"])), "w5 + w1*w4\n");
    assert_eq!(stdout(&unstalg(&["calc", "Sq^0 | w3"])), "w3\n");
    let d = stdout(&unstalg(&["calc", "D_1 D_1 | w2"]));
    assert_eq!(d, stdout(&unstalg(&["calc", "Sq^2 Sq^1 | w2"])));
    assert_eq!(d, "w5 + w1*w4 + w2*w3 + w1^2*w3 + w1*w2^2 + w1^3*w2\n");
}

#[test]
fn calc_reports_parse_position() {
    let out = unstalg(&["calc", "Sq^1 | w4 + y"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 12"), "{err}");
}

#[test]
fn small_bound_names_the_minimum() {
    let out = unstalg(&["run", "all", "--bound", "8"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("suite `dickson` requires --bound >= 12 (got 8)"), "{err}");
}

#[test]
fn unknown_suite_is_rejected() {
    let out = unstalg(&["run", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_unstalg"))
        .args(["run", "wu", "--format", "json"])
        .env("UNSTALG_BOUND", "12")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), golden("wu_12.json"));
}

#[test]
fn all_writes_json_to_a_file() {
    let path = std::env::temp_dir().join(format!("unstalg-all-{}.json", std::process::id()));
    let out = unstalg(&[
        "run",
        "all",
        "--bound",
        "12",
        "--format",
        "json",
        "--jobs",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["suite"], "all");
    assert_eq!(report["bound"], 12);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    for field in ["id", "paper_ref", "status", "details"] {
        assert!(checks.iter().all(|c| c.get(field).is_some()), "{field}");
    }
    // the schedule does not affect the report
    let serial = unstalg(&["run", "all", "--bound", "12", "--format", "json", "--jobs", "1"]);
    assert_eq!(stdout(&serial), text);
}
