mod common;

use std::process::{Command, Output};

use common::corpus_dir;

fn norden(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norden")).args(args).env_remove("NORDEN_MODE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn corpus(name: &str) -> String {
    corpus_dir().join(name).display().to_string()
}

fn temp_file(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn validate_accepts_abelian() {
    let o = norden(&["validate", &corpus("abelian4.norden")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("signature (2,2)"));
}

#[test]
fn validate_names_odd_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let f = temp_file(&dir, "odd.norden", "dim 3\n");
    let o = norden(&["validate", &f]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("OddDimension"), "{}", stderr(&o));
}

#[test]
fn conflicting_duplicate_reports_both_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = temp_file(&dir, "dup.norden", "dim 2\ng 1 2 1\n# note\ng 1 2 2\n");
    let o = norden(&["validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains('2') && err.contains('4'), "{err}");
}

#[test]
fn verify_abelian_exits_zero_with_full_catalogue() {
    let o = norden(&["verify", &corpus("abelian4.norden"), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), norden::verify::CATALOGUE.len());
    for line in out.lines() {
        assert_eq!(line.split('\t').count(), 4, "{line}");
    }
}

#[test]
fn verify_non_w3_marks_gated_checks() {
    let o = norden(&["verify", &corpus("nonw3-4d-a.norden"), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("eq1.7-w3-norm\t")).unwrap();
    assert_eq!(line, "eq1.7-w3-norm\tEq 1.7\tnot-applicable\t-");
    let text = stdout(&norden(&["verify", &corpus("nonw3-4d-a.norden")]));
    assert!(text.lines().any(|l| l.starts_with("eq1.7-w3-norm") && l.contains("[failed gate: is_W3]")));
}

#[test]
fn verify_searched_example_passes_cross_check() {
    let o = norden(&["verify", &corpus("w3-4d-a.norden"), "--checks", "thm2.2-k-crosscheck", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "thm2.2-k-crosscheck\tEq 2.7\tpass\t0\n");
}

#[test]
fn unknown_check_is_an_input_error() {
    let o = norden(&["verify", &corpus("abelian4.norden"), "--checks", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn machine_output_is_stable_across_runs() {
    let a = stdout(&norden(&["verify", &corpus_dir().display().to_string(), "--format", "machine"]));
    let b = stdout(&norden(&["verify", &corpus_dir().display().to_string(), "--format", "machine"]));
    assert_eq!(a, b);
    assert!(a.contains("# file w3-4d-a.norden"));
}

#[test]
fn mode_flag_beats_environment() {
    let f = corpus("w3-4d-a.norden");
    let env_float = Command::new(env!("CARGO_BIN_EXE_norden"))
        .args(["verify", &f, "--format", "machine", "--checks", "w0-class"])
        .env("NORDEN_MODE", "float")
        .output()
        .unwrap();
    assert!(stdout(&env_float).contains("e0"), "{}", stdout(&env_float));
    let flag_rational = Command::new(env!("CARGO_BIN_EXE_norden"))
        .args(["verify", &f, "--format", "machine", "--checks", "w0-class", "--mode", "rational"])
        .env("NORDEN_MODE", "float")
        .output()
        .unwrap();
    assert_eq!(stdout(&flag_rational), "w0-class\tW0\tinformational\t1\n");
}

#[test]
fn file_scalar_line_sets_mode() {
    let dir = tempfile::tempdir().unwrap();
    let body = std::fs::read_to_string(corpus("w3-4d-a.norden")).unwrap().replace("scalar rational", "scalar float");
    let f = temp_file(&dir, "f.norden", &body);
    let o = norden(&["verify", &f, "--format", "machine", "--checks", "w0-class"]);
    assert_eq!(stdout(&o), "w0-class\tW0\tinformational\t1.000000e0\n");
}

#[test]
fn export_is_canonical_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let f = temp_file(
        &dir,
        "x.norden",
        "dim 4\nJ 2 4 -1\nJ 4 2 1\nJ 1 3 -1\nJ 3 1 1\ng 4 4 -1\ng 3 3 -2/2\ng 2 2 1\ng 1 1 1\nC 2 1 3 1\nC 1 2 3 -1\nC 1 3 2 2/4\nC 3 1 2 -1/2\n",
    );
    let first = stdout(&norden(&["export", &f]));
    assert!(first.contains("C 1 2 3 -1\n"));
    assert!(!first.contains("C 2 1 3"));
    assert!(first.contains("C 1 3 2 1/2\n"));
    assert!(first.contains("g 3 3 -1\n"));
    let g = temp_file(&dir, "y.norden", &first);
    assert_eq!(stdout(&norden(&["export", &g])), first);
}

#[test]
fn search_rejects_odd_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let o = norden(&["search", "--target", "w3-nontrivial", "--dim", "5", "--out-dir", &dir.path().display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dimension must be even"));
}

#[test]
fn search_writes_certified_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = norden(&["search", "--target", "w3-nontrivial", "--dim", "4", "--seed", "3", "--budget", "300", "--out-dir", &out]);
    assert_eq!(o.status.code(), Some(0));
    let summary = stdout(&o);
    assert_eq!(summary, std::fs::read_to_string(dir.path().join("summary.txt")).unwrap());
    for line in summary.lines().filter_map(|l| l.strip_prefix("file ")) {
        let v = norden(&["verify", &dir.path().join(line).display().to_string(), "--format", "machine"]);
        assert_eq!(v.status.code(), Some(0), "{line}");
    }
}
