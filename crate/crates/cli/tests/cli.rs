use std::fs;
use std::process::{Command, Output};

fn pcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn prove_peirce_in_i_writes_a_checked_proof() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("peirce.proof");
    let p = path.to_str().unwrap();
    let o = pcalc(&["prove", "((p1->p2)->p1)->p1", "--calc", "I", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("proved in I: "));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("calculus: I\n"));
    let last = text.lines().last().unwrap();
    assert!(last.ends_with(" ((p1 -> p2) -> p1) -> p1"), "{last}");

    let o = pcalc(&["check", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok: |- ((p1 -> p2) -> p1) -> p1 (I, "));
}

#[test]
fn tautology_prints_countermodel() {
    let o = pcalc(&["tautology", "p1->p2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("p1=T p2=F"));
    let o = pcalc(&["tautology", "p1 -> p2 -> p1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "tautology\n");
}

#[test]
fn prove_refutes_non_tautologies() {
    let o = pcalc(&["prove", "p1 v p2", "--calc", "ID"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("countermodel: p1=F p2=F"));
}

#[test]
fn normalize_gamma_and_tau() {
    let o = pcalc(&["normalize", "p1 v (p2 & p3)", "--gamma"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(p1 v p2) & (p1 v p3)\n");
    let o = pcalc(&["normalize", "p1 v p2", "--tau"]);
    assert_eq!(stdout(&o), "(p1 -> p2) -> p2\n");
    let o = pcalc(&["normalize", "p1 & p2", "--tau"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["prove", "p1 ->"][..],
        &["prove", "p1 & p2 -> p1", "--calc", "ID"],
        &["prove", "p1", "--calc", "Q"],
        &["prove", "p1 -> p1", "--route", "sideways"],
        &["normalize", "p1"],
        &["frobnicate"],
        &["check", "/nonexistent/proof"],
    ] {
        assert_eq!(pcalc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_reports_bad_proofs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.proof");
    fs::write(&path, "calculus: I\n1. axiom Ax1 p1 -> p1\n").unwrap();
    let o = pcalc(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("step 1"));
    fs::write(&path, "calculus: I\n1. axiom Ax1 p1 ->\n").unwrap();
    assert_eq!(pcalc(&["check", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn translate_and_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.json");
    let i = dir.path().join("i.proof");
    let o = pcalc(&["prove", "p1 v (p1 -> p2)", "--calc", "ID", "--json", "--out", id.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&id).unwrap().starts_with('{'));
    let o = pcalc(&["translate", id.to_str().unwrap(), "--out", i.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = pcalc(&["check", i.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok: |- (p1 -> p1 -> p2) -> p1 -> p2 (I, "));
}

#[test]
fn both_routes_and_every_calculus() {
    for (f, calc) in [
        ("p1 -> p1", "I"),
        ("p1 v (p1 -> p2)", "ID"),
        ("p1 & p2 -> p2 & p1", "IC"),
        ("p1 & (p2 v p3) -> (p1 & p2) v (p1 & p3)", "P"),
    ] {
        let o = pcalc(&["prove", f, "--calc", calc]);
        assert_eq!(o.status.code(), Some(0), "{f} in {calc}");
        assert!(stdout(&o).starts_with(&format!("calculus: {calc}\n")));
    }
    let o = pcalc(&["prove", "p1 & (p2 v p3) -> (p1 & p2) v (p1 & p3)", "--route", "reduction"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn decompose_modes() {
    let o = pcalc(&["decompose", "p1 -> (p2 & (p3 v p1))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[..2], ["p1 -> p2", "p1 -> p3 v p1"]);
    let o = pcalc(&["decompose", "p1 -> (p2 & (p3 v p1))", "--mode", "implicative"]);
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[..2], ["p1 -> p2", "p1 -> (p3 -> p1) -> p1"]);
}

#[test]
fn enumerate_summary_is_deterministic() {
    let args = ["enumerate", "--max-connectives", "2", "--max-atoms", "2", "--calc", "ID", "--list"];
    let a = pcalc(&args);
    let b = pcalc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    // 2 atoms, 2 * 2 * 2 with one connective, 2 * 2 * 2 * 8 with two
    assert!(out.contains("      total        74"), "{out}");
    assert!(out.contains("p1 -> p1\tproved\t"));
    assert!(out.contains("p1 v p2\tcountermodel\tp1=F p2=F"));
}

#[test]
fn stats_lists_schemes_of_the_calculus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.proof");
    let o = pcalc(&["prove", "p1 -> p1", "--calc", "ID", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = pcalc(&["stats", path.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.contains("valid       yes"));
    assert!(out.contains("Ax6"));
    assert!(!out.contains("Ax7"));
}
