//! End-to-end runs of the `recmodal` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn recmodal(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recmodal"))
        .current_dir(dir)
        .env_remove("RECMODAL_BUDGET")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn library(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../library").join(name)
}

#[test]
fn decide_reports_valid_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let out = recmodal(dir.path(), &["decide", "false |> p"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "valid");
    assert!(!dir.path().join("countermodel.json").exists());
}

#[test]
fn refutation_writes_a_countermodel_that_check_model_confirms() {
    let dir = tempfile::tempdir().unwrap();
    let out = recmodal(dir.path(), &["decide", "(true |> p) |> p", "--logic", "rd"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("refuted at world"));
    let path = dir.path().join("countermodel.json");
    let model: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(model["logic"], "rd");

    // The recorded world refutes the recorded formula.
    let check = recmodal(dir.path(), &["check-model", "countermodel.json"]);
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("fails at"));

    // A formula true everywhere holds.
    let check = recmodal(dir.path(), &["check-model", "countermodel.json", "false |> p"]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn a4_separates_the_logics() {
    let dir = tempfile::tempdir().unwrap();
    let a4 = "p |> q -> (p |> r -> p |> q & r)";
    assert_eq!(recmodal(dir.path(), &["decide", a4, "--logic", "r"]).status.code(), Some(1));
    assert_eq!(recmodal(dir.path(), &["decide", a4, "--logic", "rd"]).status.code(), Some(0));
    assert_eq!(recmodal(dir.path(), &["decide", a4, "--logic", "rforall"]).status.code(), Some(0));
}

#[test]
fn library_proofs_check() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["lemma1.proof", "lemma2.proof"] {
        let out = recmodal(dir.path(), &["check-proof", library(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("ok: "));
    }
}

#[test]
fn second_lemma_needs_the_deterministic_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let mut proof: serde_json::Value = serde_json::from_str(&fs::read_to_string(library("lemma2.proof")).unwrap()).unwrap();
    proof["logic"] = "r".into();
    let path = dir.path().join("lemma2-r.proof");
    fs::write(&path, proof.to_string()).unwrap();
    let out = recmodal(dir.path(), &["--json", "check-proof", "lemma2-r.proof"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert!(!report["errors"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(recmodal(dir.path(), &["decide"]).status.code(), Some(2));
    assert_eq!(recmodal(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(recmodal(dir.path(), &["decide", "p |>"]).status.code(), Some(2));
    assert_eq!(recmodal(dir.path(), &["check-proof", "missing.proof"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "decide", "p |> q -> (p |> r -> p |> q & r)"];
    let first = recmodal(dir.path(), &args);
    let file = fs::read(dir.path().join("countermodel.json")).unwrap();
    let second = recmodal(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(file, fs::read(dir.path().join("countermodel.json")).unwrap());

    let corpus = ["corpus", "--count", "15", "--seed", "3"];
    let a = recmodal(dir.path(), &corpus);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, recmodal(dir.path(), &corpus).stdout);
}

#[test]
fn realize_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a4 = "p |> q -> (p |> r -> p |> q & r)";
    assert_eq!(recmodal(dir.path(), &["decide", "(true |> p) |> p"]).status.code(), Some(1));
    let out = recmodal(dir.path(), &["realize", "countermodel.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = recmodal(dir.path(), &["verify-realization", "bundle.json", "(true |> p) |> p"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("agreement on"));
    let out = recmodal(dir.path(), &["verify-realization", "bundle.json", a4]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn deterministic_realization_rejects_branching_models() {
    let dir = tempfile::tempdir().unwrap();
    let a4 = "p |> q -> (p |> r -> p |> q & r)";
    assert_eq!(recmodal(dir.path(), &["decide", a4]).status.code(), Some(1));
    let out = recmodal(dir.path(), &["realize", "countermodel.json", "--logic", "rd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_runs_programs() {
    let dir = tempfile::tempdir().unwrap();
    let out = recmodal(dir.path(), &["eval", "(cons (head input) (quote b))", "(a . c)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "{(a . b)}");

    let out = recmodal(dir.path(), &["eval", "(amb (quote x) (quote y))"]);
    assert_eq!(stdout(&out).trim(), "{x, y}");
    let out = recmodal(dir.path(), &["eval", "(amb (quote x) (quote y))", "--mode", "det"]);
    assert_eq!(out.status.code(), Some(2));

    let out = recmodal(dir.path(), &["eval", "diverge"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "{} (divergent)");
}

#[test]
fn budget_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let omega = "(apply (quote (apply input input)) (quote (apply input input)))";
    let run = |budget: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_recmodal"));
        cmd.current_dir(dir.path()).args(["--json", "eval", omega]);
        match budget {
            Some(b) => cmd.env("RECMODAL_BUDGET", b),
            None => cmd.env_remove("RECMODAL_BUDGET"),
        };
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(1));
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()
    };
    let small = run(Some("50"));
    let default = run(None);
    assert_eq!(small["budget_exhausted"], true);
    assert!(small["steps"].as_u64().unwrap() < default["steps"].as_u64().unwrap());
}
