use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_run-transform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn transform_catalan() {
    let o = cli(&["transform", "--seq", "1,1,2,5,14,42", "--order", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(rows[..4], ["1", "0,1", "0,1,1", "0,2,2,1"]);
    assert_eq!(rows.len(), 6);
    let err = stderr(&o);
    assert!(err.contains("a = 1,0,0,0,0,0"));
    assert!(err.contains("verdict: nonnegative"));
}

#[test]
fn transform_negative_and_trivial() {
    let o = cli(&["transform", "--seq", "1,0,0,0", "--order", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["entries"]["1,0"], -1);
    assert_eq!(v["entries"]["1,1"], 1);
    assert_eq!(v["nonnegative"], false);

    let o = cli(&["transform", "--seq", "1", "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("  0: 1\n"));
}

#[test]
fn transform_input_errors() {
    assert_eq!(cli(&["transform", "--seq", "1,2", "--order", "5"]).status.code(), Some(2));
    assert_eq!(cli(&["transform", "--seq", "1,two"]).status.code(), Some(2));
    assert_eq!(cli(&["transform"]).status.code(), Some(2));
    assert_eq!(cli(&["transform", "--file", "/nonexistent/seq.txt"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn transform_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    std::fs::write(&path, "# catalan\n0 1\n1 1\n2 2\n3 5\n").unwrap();
    let o = cli(&["transform", "--file", path.to_str().unwrap(), "--format", "bfile"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 1\n1 0\n2 1\n3 0\n4 1\n5 1\n6 0\n7 2\n8 2\n9 1\n");
}

#[test]
fn verify_single_and_unknown() {
    let o = cli(&["verify", "--case", "catalan", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o).lines().next().unwrap().to_string();
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["case"], "catalan");
    assert_eq!(v["order"], 8);
    assert_eq!(v["status"], "pass");
    assert!(v["millis"].is_u64());

    assert_eq!(cli(&["verify", "--case", "nope"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "--case", "jmd", "--j", "2"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "--case", "family", "--family", "f1"]).status.code(), Some(2));
}

#[test]
fn verify_failure_exit_code() {
    let o = cli(&["verify", "--case", "conjecture", "--j", "2", "--m", "1", "--d", "0", "--order", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["discrepancy"]["x_power"].is_u64());

    let o = cli(&["verify", "--case", "jmd-closed-form", "--j", "2", "--m", "0", "--d", "2", "--order", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_budget_warning() {
    let o = cli(&["verify", "--case", "even-cycles", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"status\":\"budget-exceeded\""));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn scan_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.jsonl");
    let o = cli(&["scan", "--j", "1,2", "--m", "0..1", "--d", "0", "--order", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 4);
    assert!(stdout(&o).contains("passed"));
    let o = cli(&["scan", "--j", "2", "--m", "0,2", "--d", "0..1", "--order", "3", "--no-flats"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4/4 passed"));
}

#[test]
fn enumerate_examples() {
    let o = cli(&["enumerate", "--dyck", "--size", "3", "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .map(|l| l.split('\t').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let mut hist = [0; 4];
    for r in &rows {
        hist[r[2].parse::<usize>().unwrap()] += 1;
    }
    assert_eq!(hist, [0, 2, 2, 1]);

    let o = cli(&["enumerate", "--spartitions", "--size", "3"]);
    assert_eq!(stdout(&o).lines().count(), 13);
    let o = cli(&["enumerate", "--schroeder", "--size", "2"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = cli(&["enumerate", "--family", "even-cycles", "--size", "2"]);
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = cli(&["enumerate", "--paths", "jmd", "--j", "3", "--m", "0", "--d", "0", "--size", "2", "--stats", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("path,size,pyramid_ascents,flat_profile\n"));
    assert!(text.contains("\"UUUDDDUUUDDD\",\"2\",\"2\""));
    assert_eq!(cli(&["enumerate", "--dyck", "--size", "13"]).status.code(), Some(2));
    assert_eq!(cli(&["enumerate", "--size", "3"]).status.code(), Some(2));
}

#[test]
fn export_targets() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.txt");
    let o = cli(&["export", "--seq", "1,1,2,5", "--order", "3", "--out", tri.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&tri).unwrap(),
        "0 1\n1 0\n2 1\n3 0\n4 1\n5 1\n6 0\n7 2\n8 2\n9 1\n"
    );

    let o = cli(&["export", "--seq", "1,1,2,5,14", "--target", "row-sums", "--format", "csv"]);
    assert_eq!(stdout(&o), "1,1,2,5,14\n");
    let o = cli(&["export", "--seq", "1,1,2,5,15,52", "--target", "column0"]);
    assert_eq!(stdout(&o), "0 1\n1 0\n2 0\n3 0\n4 1\n5 5\n");

    let o = cli(&["export", "--seq", "1,1", "--out", "/nonexistent-dir/x.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let o = cli(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("transform"));
}
