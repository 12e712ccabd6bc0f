use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use opdi_core::{Answer, Dist, Graph, RunReport};
use tempfile::TempDir;

fn opdi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opdi")).args(args).output().expect("run opdi")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const STAR: &str = "4 3\n0 1\n0 2\n0 3\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn decide_exit_codes() {
    let dir = TempDir::new().unwrap();
    let star = write(&dir, "star.txt", STAR);
    assert_eq!(opdi(&["decide", &star, "1"]).status.code(), Some(1));
    let yes = opdi(&["decide", &star, "2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("answer: yes"));

    let single = write(&dir, "one.txt", "1 0\n");
    assert_eq!(opdi(&["decide", &single, "1"]).status.code(), Some(0));

    let k4 = write(&dir, "k4.txt", K4);
    let bad = opdi(&["decide", &k4, "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not outerplanar"));

    let garbage = write(&dir, "junk.txt", "three vertices\n");
    assert_eq!(opdi(&["decide", &garbage, "2"]).status.code(), Some(2));
    assert_eq!(opdi(&["decide", "/nonexistent/graph.txt", "2"]).status.code(), Some(2));
    assert_eq!(opdi(&["decide", &star, "0"]).status.code(), Some(2));
}

#[test]
fn json_report_round_trips() {
    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.txt", "6 4\n0 1\n1 2\n3 4\n4 5\n");
    let out = opdi(&["decide", &two, "2", "--json", "--witness", "--crosscheck"]);
    assert_eq!(out.status.code(), Some(0));
    let r = RunReport::from_json(stdout(&out).trim()).unwrap();
    assert_eq!((r.command.as_str(), r.n, r.m, r.components), ("decide", 6, 4, 2));
    assert_eq!(r.answer, Answer::Decision(true));
    assert_eq!(r.oracle_agrees, Some(true));
    assert!(r.witness_diameter.unwrap() <= Dist::Finite(2));
    assert!(r.elapsed_ms.is_none());

    let out = opdi(&["minimize", &two, "--json"]);
    let r = RunReport::from_json(stdout(&out).trim()).unwrap();
    assert_eq!(r.answer, Answer::Value(Dist::Finite(2)));

    assert_eq!(opdi(&["approx", &two]).status.code(), Some(2));
    let star = write(&dir, "star.txt", STAR);
    let timed = opdi(&["approx", &star, "--json", "--timing"]);
    assert!(RunReport::from_json(stdout(&timed).trim()).unwrap().elapsed_ms.is_some());
}

#[test]
fn reads_stdin_and_stays_quiet() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_opdi"))
        .args(["minimize", "-", "--quiet"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(STAR.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn gen_is_deterministic() {
    let a = opdi(&["gen", "30", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&opdi(&["gen", "30", "5"])));
    assert_ne!(stdout(&a), stdout(&opdi(&["gen", "30", "6"])));
    let g = Graph::parse(&stdout(&opdi(&["gen", "30", "5", "--connected"]))).unwrap();
    assert!(g.is_connected() && opdi_core::is_outerplanar(&g));
}

#[test]
fn oracle_refuses_large_inputs() {
    let dir = TempDir::new().unwrap();
    let big = write(&dir, "big.txt", &stdout(&opdi(&["gen", "11", "1"])));
    let out = opdi(&["oracle", &big, "min"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n <= 10"));
    assert_eq!(opdi(&["decide", &big, "3", "--crosscheck"]).status.code(), Some(2));

    let star = write(&dir, "star.txt", STAR);
    assert_eq!(opdi(&["oracle", &star, "1"]).status.code(), Some(1));
    assert!(stdout(&opdi(&["oracle", &star, "min"])).contains("answer: 2"));
    assert_eq!(opdi(&["oracle", &star, "lots"]).status.code(), Some(2));
}

#[test]
fn obstruction_members() {
    let out = opdi(&["obstruction", "A", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# A1 member 0\n"));

    let dir = TempDir::new().unwrap();
    let target = dir.path().join("obs");
    assert!(stdout(&opdi(&["obstruction", "b", "2"])).is_empty());
    let out = opdi(&["obstruction", "B", "3", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut files: Vec<_> = std::fs::read_dir(&target).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty());
    for f in &files {
        assert!(f.file_name().unwrap().to_str().unwrap().starts_with("B3-"));
        let g = Graph::parse(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert!(!opdi_core::decide(&g, 3).unwrap(), "{}", Path::new(f).display());
    }
}

#[test]
fn matching_and_approx() {
    let dir = TempDir::new().unwrap();
    // Fan on a hexagon: maximal outerplanar, diameter 2.
    let fan = write(&dir, "fan.txt", "6 9\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 2\n0 3\n0 4\n");
    let out = opdi(&["matching", &fan, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = RunReport::from_json(stdout(&out).trim()).unwrap();
    let chords = r.matching.unwrap();
    assert!(!chords.is_empty());
    assert_eq!(r.answer, Answer::Value(Dist::Finite(chords.len() as u32)));
    assert_eq!(r.outer_order.unwrap().len(), 6);

    let star = write(&dir, "star.txt", STAR);
    assert_eq!(opdi(&["matching", &star]).status.code(), Some(2));
    let out = opdi(&["approx", &star]);
    assert!(stdout(&out).contains("answer: 2"));
}
