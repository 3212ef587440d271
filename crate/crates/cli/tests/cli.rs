use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn programs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/programs")
}

fn program(name: &str) -> String {
    programs().join(name).to_string_lossy().into_owned()
}

fn alog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alog")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_program(src: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".alog").tempfile().unwrap();
    f.write_all(src.as_bytes()).unwrap();
    f
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = alog(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn solve_both_semantics() {
    let o = alog(&["solve", &program("p2.alog"), "--semantics", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "alog: INCONSISTENT\nslog+: {p(1)}\n");
}

#[test]
fn solve_lists_every_answer_set() {
    let o = alog(&["solve", &program("p9.alog")]);
    assert_eq!(stdout(&o), "{p(a), q(a)}\n{q(a)}\n");
    let o = alog(&["solve", &program("empty.alog")]);
    assert_eq!(stdout(&o), "{}\n");
}

#[test]
fn int_range_flag_bounds_integers() {
    let f = temp_program("p(1) :- card{X: p(X)} >= 0.\n");
    let o = alog(&["--int-range", "0..1", "solve", f.path().to_str().unwrap(), "--semantics", "slog+"]);
    assert_eq!(stdout(&o), "{p(1)}\n");
}

#[test]
fn check_reports_reducts_tried() {
    let o = alog(&["check", &program("p3.alog"), "--set", "p(1),p(2),p(3)", "--semantics", "slog+"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NOT AN ANSWER SET (9 reducts tried)\n");
    let o = alog(&["check", &program("p3.alog"), "--set", "p(1)", "--semantics", "slog+"]);
    assert!(stdout(&o).starts_with("ANSWER SET"));
}

#[test]
fn check_shows_the_set_reduct() {
    let o = alog(&["check", &program("p4.alog"), "--set", "q(a)", "--show-reduct"]);
    let out = stdout(&o);
    assert!(out.starts_with("NOT AN ANSWER SET"));
    assert!(out.contains("p(a) :- q(a).\nq(a).\n"), "{out}");
}

#[test]
fn check_rejects_inconsistent_sets() {
    let o = alog(&["check", &program("p9.alog"), "--set", "q(a), -q(a)"]);
    assert!(stdout(&o).contains("inconsistent"));
}

#[test]
fn diff_shows_exclusive_sets() {
    let o = alog(&["diff", &program("p2.alog")]);
    assert_eq!(stdout(&o), "alog only: none\nslog+ only: {p(1)}\n");
}

#[test]
fn parse_normalizes() {
    let o = alog(&["parse", &program("p9.alog")]);
    assert_eq!(stdout(&o), "q(a).\np <= {X:q(X)}.\n");
    let f = temp_program("q(a).  p ⊆ {X:q(X)}.");
    assert_eq!(stdout(&alog(&["parse", f.path().to_str().unwrap()])), "q(a).\np <= {X:q(X)}.\n");
}

#[test]
fn solve_json() {
    let v = json(&["solve", &program("p9.alog"), "--semantics", "both"]);
    assert_eq!(v["semantics"], "both");
    assert_eq!(v["answer_sets"]["alog"], serde_json::json!([["p(a)", "q(a)"], ["q(a)"]]));
    assert_eq!(v["answer_sets"]["slog+"], v["answer_sets"]["alog"]);
    assert_eq!(v["stats"]["ground_rules"], 2);
    assert_eq!(v["stats"]["candidate_universe"], 2);
    assert_eq!(v["stats"]["candidates"], 4);
    assert!(v["program"].as_str().unwrap().ends_with("p9.alog"));
}

#[test]
fn check_json() {
    let v = json(&["check", &program("p3.alog"), "--set", "p(1),p(2),p(3)", "--semantics", "both"]);
    assert_eq!(v["set"], serde_json::json!(["p(1)", "p(2)", "p(3)"]));
    assert_eq!(v["verdicts"]["slog+"]["answer_set"], false);
    assert_eq!(v["verdicts"]["slog+"]["reducts_tried"], 9);
    assert_eq!(v["verdicts"]["alog"]["answer_set"], false);
    assert_eq!(v["verdicts"]["alog"]["consistent"], true);
}

#[test]
fn diff_json() {
    let v = json(&["diff", &program("p2.alog")]);
    assert_eq!(v["exclusive"]["alog"], serde_json::json!([]));
    assert_eq!(v["exclusive"]["slog+"], serde_json::json!([["p(1)"]]));
}

#[test]
fn audit_runs_and_reports() {
    let o = alog(&["audit", "--seed", "3", "--count", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 6);
    let v = json(&["audit", "--seed", "3", "--count", "2"]);
    assert_eq!(v["seed"], 3);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 6);
    assert!(suites.iter().all(|s| s["cases"] == 2 && s["findings"].as_array().unwrap().is_empty()));
    assert_eq!(suites.iter().filter(|s| s["required"] == false).count(), 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "solve", "GRAD", "--semantics", "both"],
        vec!["solve", "GRAD", "--semantics", "both"],
        vec!["--json", "audit", "--seed", "9", "--count", "4"],
    ] {
        let grad = program("graduate.alog");
        let args: Vec<&str> = args.iter().map(|a| if *a == "GRAD" { grad.as_str() } else { a }).collect();
        assert_eq!(alog(&args).stdout, alog(&args).stdout);
    }
}

#[test]
fn parse_errors_name_the_position() {
    let f = temp_program("p(1) :- card{X: p(X)} != .\n");
    let path = f.path().to_str().unwrap();
    let o = alog(&["solve", path]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), format!("{path}:1:26: syntax error: expected a term, found `.`\n"));
    assert!(o.stdout.is_empty());
}

#[test]
fn scope_and_arity_errors() {
    let f = temp_program("p(1).\np(1,2).\n");
    let o = alog(&["parse", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(":2:1: arity error"), "{}", stderr(&o));
    let f = temp_program("p :- card{X: r(X,Y)} > 0.\n");
    let o = alog(&["parse", f.path().to_str().unwrap()]);
    assert!(stderr(&o).contains("scope error"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(alog(&["solve", "/nonexistent/file.alog"]).status.code(), Some(1));
    assert_eq!(alog(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(alog(&["solve", &program("p2.alog"), "--semantics", "fuzzy"]).status.code(), Some(1));
    assert_eq!(alog(&["--int-range", "3", "solve", &program("p2.alog")]).status.code(), Some(1));
    assert_eq!(alog(&["check", &program("p2.alog"), "--set", "p(("]).status.code(), Some(1));
    assert_eq!(alog(&["--help"]).status.code(), Some(0));
}

#[test]
fn caps_exit_two() {
    let o = alog(&["--cap", "2", "solve", &program("graduate.alog")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit is 2"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}
