//! Command line behavior: exit codes, determinism details, input round
//! trips.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use hallcomb_cli::corpus;
use hallcomb_cli::input::Input;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallcomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    corpus_dir().join(name).display().to_string()
}

#[test]
fn passing_input_exits_zero() {
    let out = run(&[
        "segal-check",
        "--input",
        &path("z2.json"),
        "--d",
        "2",
        "--nmax",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
}

#[test]
fn failing_check_exits_one() {
    let out = run(&[
        "segal-check",
        "--input",
        &path("dup2.json"),
        "--d",
        "2",
        "--nmax",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));

    let out = run(&["hall", "--input", &path("dup2.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_range_exits_two() {
    let out = run(&[
        "segal-check",
        "--input",
        &path("z2.json"),
        "--d",
        "4",
        "--nmax",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "{{\"kind\": \"monoid\", \"elements\": [\"e\"]}}").unwrap();
    let out = run(&[
        "segal-check",
        "--input",
        file.path().to_str().unwrap(),
        "--d",
        "2",
        "--nmax",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let mut bad_table = tempfile::NamedTempFile::new().unwrap();
    // A non-associative table is rejected at validation.
    writeln!(
        bad_table,
        "{{\"kind\": \"monoid\", \"elements\": [\"e\", \"a\", \"b\"], \
         \"table\": [[0, 1, 2], [1, 0, 2], [2, 2, 1]]}}"
    )
    .unwrap();
    let out = run(&["hall", "--input", bad_table.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn geometry_report_prints_seed() {
    let out = run(&["gale", "--n", "4", "--d", "2", "--geometry", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("seed: "), "{}", text);
}

#[test]
fn machine_report_is_json_without_timing() {
    let out = run(&[
        "--format",
        "machine",
        "hall",
        "--input",
        &path("z2.json"),
        "--oracle",
        &path("z2.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["overall"], serde_json::Value::Bool(true));
    let first = &value["checks"][0];
    assert!(first.get("millis").is_none());
    assert!(first.get("verdict").is_some());
}

#[test]
fn corpus_round_trips() {
    for (name, _) in corpus::all_inputs() {
        let text =
            std::fs::read_to_string(corpus_dir().join(format!("{}.json", name))).unwrap();
        let parsed = Input::parse(&text).unwrap();
        parsed.realize(3).expect("validates");
        let reparsed = Input::parse(&parsed.to_json()).unwrap();
        assert_eq!(parsed, reparsed, "{}", name);
    }
}

#[test]
fn sidecars_parse() {
    for (name, _) in corpus::all_inputs() {
        let text = std::fs::read_to_string(
            corpus_dir().join(format!("{}.expected.json", name)),
        )
        .unwrap();
        let expected: corpus::Expected = serde_json::from_str(&text).unwrap();
        let reference = corpus::expected_for(name);
        assert_eq!(expected.two_segal, reference.two_segal, "{}", name);
        assert_eq!(expected.three_segal, reference.three_segal, "{}", name);
        assert_eq!(
            expected.hall_associative, reference.hall_associative,
            "{}",
            name
        );
    }
}
