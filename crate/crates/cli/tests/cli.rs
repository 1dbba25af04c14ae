use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn linlog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linlog"))
        .args(args)
        .env_remove("LINLOG_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const LOOP: &str = "terminal st\nstate s1 = dec A -> s1 else st\n";

#[test]
fn certify_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.tm", LOOP);
    let proof = dir.path().join("proof.json");
    let proof = proof.to_str().unwrap();
    let o = linlog(&["certify", "--machine", &m, "--id", "s1,3,0", "--budget", "100", "--out", proof]);
    assert_eq!(code(&o), 0);
    assert!(Path::new(proof).exists());
    let o = linlog(&["check", "--system", "cllrr", proof]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "ok");
    // MALL has no exponentials
    let o = linlog(&["check", "--system", "mall", proof]);
    assert_eq!(code(&o), 1);

    let o = linlog(&["certify", "--machine", &m, "--id", "s1,0,2"]);
    assert_eq!(code(&o), 1);
    let o = linlog(&["certify", "--machine", &m, "--id", "s1,50,0", "--budget", "5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn refute_and_search() {
    let o = linlog(&["refute", "--sequent", "p |- p * p", "--max-size", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("elements 2\n"));
    let o = linlog(&["refute", "--sequent", "p |- p", "--max-size", "2"]);
    assert_eq!(code(&o), 2);
    let o = linlog(&["search", "--sequent", "p |- p * p", "--system", "mall"]);
    assert_eq!(code(&o), 1);
    let o = linlog(&["search", "--sequent", "!p |- q", "--system", "cll"]);
    assert_eq!(code(&o), 2);
    let o = linlog(&["--format", "json", "search", "--sequent", "p, p -o q |- q", "--system", "cllrr"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"rule\""));
}

#[test]
fn seeds_reproduce() {
    let a = linlog(&["--seed", "5", "--jobs", "3", "refute", "--sequent", "!p |- p * p * p", "--max-size", "5"]);
    let b = linlog(&["--seed", "5", "refute", "--sequent", "!p |- p * p * p", "--max-size", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_linlog"))
        .args(["models", "--max-size", "4", "--limit", "300"])
        .env("LINLOG_SEED", "9")
        .output()
        .unwrap();
    let flag = linlog(&["--seed", "9", "models", "--max-size", "4", "--limit", "300"]);
    assert_eq!(env.stdout, flag.stdout);
}

#[test]
fn transform_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    // `!p |- 1` by weakening the `!p` away
    let proof = r#"{
  "rule": "!W",
  "conclusion": "!p |- 1",
  "principal": [0],
  "premises": [{"rule": "1r", "conclusion": " |- 1", "principal": [0], "premises": []}]
}"#;
    let p = write(dir.path(), "w.json", proof);
    assert_eq!(code(&linlog(&["check", "--system", "cll", &p])), 0);
    assert_eq!(code(&linlog(&["check", "--system", "cllr", &p])), 1);
    let t = dir.path().join("t.json");
    let t = t.to_str().unwrap();
    assert_eq!(code(&linlog(&["transform", &p, "--out", t])), 0);
    assert_eq!(code(&linlog(&["check", "--system", "cllr", t])), 0);
    let r = dir.path().join("r.json");
    let r = r.to_str().unwrap();
    assert_eq!(code(&linlog(&["reduce", t, "--sequent", "!p |- 1", "--out", r])), 0);
    assert_eq!(code(&linlog(&["check", "--system", "cll", r])), 0);
}

#[test]
fn machines() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.tm", LOOP);
    let o = linlog(&["simulate", "--machine", &m, "--id", "(s1, 2, 0)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "(s1, 2, 0)\n(s1, 1, 0)\n(s1, 0, 0)\n(st, 0, 0)\naccepted\n");
    let o = linlog(&["normalize", "--machine", &m]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("terminal st@0\n"));
    let o = linlog(&["encode", "--machine", &m, "--id", "st,0,0"]);
    assert!(stdout(&o).ends_with("goal: c_st |- c_st\n"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&linlog(&["frobnicate"])), 3);
    assert_eq!(code(&linlog(&["check", "/no/such/file.json"])), 3);
    assert_eq!(code(&linlog(&["search", "--sequent", "p |-- q"])), 3);
    assert_eq!(code(&linlog(&["search", "--sequent", "p |- q", "--system", "nope"])), 3);
    assert_eq!(code(&linlog(&["search", "--sequent", "|- p, q", "--system", "ill"])), 3);
    assert_eq!(code(&linlog(&["simulate", "--machine", "x", "--id", "s1;2"])), 3);
    assert_eq!(code(&linlog(&["translate", "--to", "ti", "p | q"])), 3);
    assert_eq!(code(&linlog(&["--help"])), 0);
}

#[test]
fn translate_prints() {
    let o = linlog(&["translate", "--to", "ti", "!p -o q"]);
    assert_eq!(stdout(&o).trim(), "!(p & 1) -o q");
    let o = linlog(&["--format", "json", "translate", "--to", "tr", "?p"]);
    assert_eq!(stdout(&o).trim(), r#"{"result":"?(p + bot)"}"#);
}
