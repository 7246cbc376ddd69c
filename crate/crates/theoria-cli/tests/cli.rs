//! End-to-end checks of the command-line surface: exit codes, diagnostics,
//! report shapes, artifact files, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theoria"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(name: &str, before: &[&str], after: &[&str]) -> Output {
    let path = fixture(name);
    let mut args: Vec<&str> = before.to_vec();
    args.push(path.to_str().unwrap());
    args.extend_from_slice(after);
    run(&args)
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("terminated normally")
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

// ----------------------------------------------------------------------
// check
// ----------------------------------------------------------------------

#[test]
fn check_accepts_the_case_study() {
    let out = run_on("casestudy.thy", &["check"], &[]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ok: 3 type(s), 5 variable(s), 1 construct(s), 4 hypothesis(es)"));
    assert!(text.lines().last().unwrap().starts_with("time: "));
}

#[test]
fn check_accepts_an_empty_file() {
    let out = run_on("empty.thy", &["check"], &[]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 hypothesis(es)"));
}

#[test]
fn check_rejects_a_broken_file_with_positioned_diagnostics() {
    let out = run_on("broken.thy", &["check"], &[]);
    assert_eq!(code(&out), 1);
    let errors = stderr(&out);
    assert!(errors.contains("broken.thy:3:10: error: unknown type `Sale`"), "{errors}");
    assert!(errors.contains("broken.thy:5:15: error: no declared type admits `True`"), "{errors}");
    assert!(stdout(&out).contains("invalid: 2 error(s)"));
}

#[test]
fn a_missing_file_is_an_error() {
    let out = run(&["check", "no-such-file.thy"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));
}

// ----------------------------------------------------------------------
// entail / oracle
// ----------------------------------------------------------------------

#[test]
fn entail_answers_yes_with_a_trace() {
    let out = run_on(
        "casestudy.thy",
        &["entail"],
        &["--query", "OS > 5 -> !(SI = True)"],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("entailed: yes"));
    assert!(text.contains("given"), "{text}");
}

#[test]
fn entail_answers_no_with_exit_one() {
    let out = run_on("casestudy.thy", &["entail"], &["--query", "SI = True"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).lines().next(), Some("entailed: no"));
}

#[test]
fn a_malformed_query_is_an_error() {
    let out = run_on("casestudy.thy", &["entail"], &["--query", "OS >"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("query:1:"), "{}", stderr(&out));
}

#[test]
fn a_tiny_clause_budget_aborts_the_run() {
    let out = run_on(
        "casestudy.thy",
        &["entail"],
        &["--query", "OS > 5 -> !(SI = True)", "--max-clauses", "1"],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("clause limit exceeded"), "{}", stderr(&out));
}

#[test]
fn the_oracle_mirrors_entailment_verdicts() {
    let yes = run_on(
        "casestudy.thy",
        &["oracle"],
        &["--query", "OS > 5 -> !(SI = True)"],
    );
    assert_eq!(code(&yes), 0);
    assert_eq!(stdout(&yes).lines().next(), Some("entailed: yes"));
    let no = run_on("casestudy.thy", &["oracle"], &["--query", "SI = True"]);
    assert_eq!(code(&no), 1);
    assert_eq!(stdout(&no).lines().next(), Some("entailed: no"));
}

// ----------------------------------------------------------------------
// closure / reduce / minimize
// ----------------------------------------------------------------------

#[test]
fn closure_lists_exactly_the_new_implication() {
    let out = run_on("casestudy.thy", &["closure"], &[]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("derived: 1 implication(s)"), "{text}");
    assert!(text.contains("  OS > 5 -> !(RD = True)"), "{text}");
}

#[test]
fn closure_warns_when_a_literal_refutes_itself() {
    let out = run_on("refute.thy", &["closure"], &["--json", "--no-timing"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(
        stderr(&out).contains("warning: A = True implies its own negation"),
        "stderr: {}",
        stderr(&out)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["result"]["self_refuting"][0], "A = True");
}

#[test]
fn both_closure_methods_print_identical_reports() {
    let matrix = run_on(
        "casestudy.thy",
        &["closure"],
        &["--method", "matrix", "--no-timing"],
    );
    let fw = run_on(
        "casestudy.thy",
        &["closure"],
        &["--method", "fw", "--no-timing"],
    );
    assert_eq!(code(&matrix), 0);
    assert_eq!(code(&fw), 0);
    assert_eq!(stdout(&matrix), stdout(&fw));
}

#[test]
fn reduce_reports_the_canonical_set_and_the_derivable_leftover() {
    let out = run_on("casestudy.thy", &["reduce"], &[]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("kept: P1, P2, P6"), "{text}");
    assert!(text.contains("removed: P10 (derivable)"), "{text}");
    assert!(text.contains("  OS > 5 -> CL > (Eventual, Low)"), "{text}");
}

#[test]
fn minimize_drops_the_redundant_hypothesis() {
    let out = run_on("casestudy.thy", &["minimize"], &[]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("minimal theory: 3 of 4 hypothesis(es)"), "{text}");
    assert!(text.contains("dropped: P10"), "{text}");
    assert!(text.contains("  P1: OS > 5 -> CL > (Eventual, Low)"), "{text}");
}

#[test]
fn minimize_order_decides_which_duplicate_survives() {
    let default = run_on("dup.thy", &["minimize"], &[]);
    assert!(stdout(&default).contains("dropped: H1"), "{}", stdout(&default));
    let reversed = run_on("dup.thy", &["minimize"], &["--order", "1,0"]);
    assert!(stdout(&reversed).contains("dropped: H2"), "{}", stdout(&reversed));
    let bad = run_on("dup.thy", &["minimize"], &["--order", "0,0"]);
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("permutation"), "{}", stderr(&bad));
}

// ----------------------------------------------------------------------
// export
// ----------------------------------------------------------------------

#[test]
fn export_dot_writes_the_case_study_graph() {
    let out_path = tmp("casestudy.dot");
    let out = run_on(
        "casestudy.thy",
        &["export"],
        &["--format", "dot", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let dot = std::fs::read_to_string(&out_path).unwrap();
    assert!(dot.starts_with("digraph implications {\n"));
    let nodes = dot
        .lines()
        .filter(|l| l.ends_with("\";") && !l.contains(" -> "))
        .count();
    let edges = dot.lines().filter(|l| l.contains(" -> ")).count();
    assert_eq!(nodes, 8);
    assert_eq!(edges, 8);
}

#[test]
fn export_kb_requires_definite_clauses() {
    let out_path = tmp("casestudy.pl");
    let out = run_on(
        "casestudy.thy",
        &["export"],
        &["--format", "kb", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("positive literals"), "{}", stderr(&out));
}

#[test]
fn export_kb_writes_facts_and_rules() {
    let out_path = tmp("horn.pl");
    let out = run_on(
        "horn.thy",
        &["export"],
        &["--format", "kb", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let kb = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(kb, "a___true.\nc___true :- a___true, b___true.\n");
}

#[test]
fn export_json_dumps_the_document() {
    let out_path = tmp("casestudy.json");
    let out = run_on(
        "casestudy.thy",
        &["export"],
        &["--format", "json", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let dump: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(dump["hypotheses"][0]["id"], "P1");
    assert_eq!(dump["language"]["variables"][0]["name"], "OS");
}

// ----------------------------------------------------------------------
// reports and determinism
// ----------------------------------------------------------------------

#[test]
fn json_reports_carry_the_command_digest_and_version() {
    let out = run_on("casestudy.thy", &["check"], &["--json", "--no-timing"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["command"], "check");
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(report["result"]["valid"], true);
    assert!(report.get("time_ms").is_none());

    let timed = run_on("casestudy.thy", &["check"], &["--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(report.get("time_ms").is_some());
}

#[test]
fn json_reports_cover_negative_verdicts_too() {
    let out = run_on(
        "casestudy.thy",
        &["entail"],
        &["--query", "SI = True", "--json", "--no-timing"],
    );
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["entailed"], false);
    assert_eq!(report["result"]["saturation"]["verdict"], "satisfiable");
}

#[test]
fn untimed_runs_are_byte_identical() {
    for args in [
        vec!["reduce"],
        vec!["closure"],
        vec!["minimize"],
    ] {
        let first = run_on("casestudy.thy", &args, &["--no-timing"]);
        let second = run_on("casestudy.thy", &args, &["--no-timing"]);
        assert_eq!(stdout(&first), stdout(&second));
        let json_first = run_on("casestudy.thy", &args, &["--no-timing", "--json"]);
        let json_second = run_on("casestudy.thy", &args, &["--no-timing", "--json"]);
        assert_eq!(stdout(&json_first), stdout(&json_second));
    }
}

#[test]
fn the_determinant_fixture_round_trips_through_check() {
    let out = run_on("determinant.thy", &["check"], &[]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("1 hypothesis(es)"));
}
