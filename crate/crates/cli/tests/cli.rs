use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const TRIANGLE: &str = "# unit triangle\nedge 0 0 1\nedge 1 1 2\nedge 2 2 0\n";

fn complete(n: u32) -> String {
    let mut out = String::new();
    let mut id = 0;
    for a in 0..n {
        for b in a + 1..n {
            out.push_str(&format!("edge {id} {a} {b}\n"));
            id += 1;
        }
    }
    out
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rayleigh")).args(args).output().unwrap()
}

fn run_on(text: &str, args: &[&str]) -> Output {
    let f = file(text);
    let path = f.path().to_str().unwrap().to_string();
    let mut full = vec![args[0], path.as_str()];
    full.extend_from_slice(&args[1..]);
    run(&full)
}

fn stdout(o: &Output) -> Vec<String> {
    String::from_utf8_lossy(&o.stdout).lines().map(str::to_string).collect()
}

fn first_line(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    stdout(o)[0].clone()
}

#[test]
fn resistance_values() {
    let o = run_on(TRIANGLE, &["resistance", "0", "1"]);
    assert_eq!(stdout(&o), vec!["2/3", "0.666666666667"]);
    assert_eq!(first_line(&run_on(TRIANGLE, &["resistance", "v2", "v2"])), "0/1");
    let k4 = complete(4);
    for (p, q) in [("0", "1"), ("1", "3"), ("2", "3")] {
        assert_eq!(first_line(&run_on(&k4, &["resistance", p, q])), "1/2");
    }
    assert_eq!(first_line(&run_on("edge 0 0 1 3/2\nedge 1 1 2 1/2\n", &["resistance", "0", "2"])), "2/1");
}

#[test]
fn voltage_value() {
    // j_0(1, 2) on the unit triangle: (r01 + r02 - r12) / 2 = 1/3
    assert_eq!(first_line(&run_on(TRIANGLE, &["voltage", "0", "1", "2"])), "1/3");
}

#[test]
fn spanning_tree_methods_agree() {
    let k5 = complete(5);
    for m in ["matrix", "dc", "enum", "vertex-del"] {
        assert_eq!(first_line(&run_on(&k5, &["spantree", "--method", m])), "125", "{m}");
    }
    let multi = "edge 0 0 1\nedge 1 0 1\nedge 2 1 2\nedge 3 2 0\nedge 4 2 2\n";
    for m in ["matrix", "dc", "enum", "vertex-del"] {
        assert_eq!(first_line(&run_on(multi, &["spantree", "--method", m])), "5", "{m}");
    }
    assert_eq!(first_line(&run_on(&k5, &["spantree", "--method", "vertex-del", "--vertex", "3"])), "125");
}

#[test]
fn closed_forms() {
    assert_eq!(first_line(&run(&["closed-form", "fan", "5", "1"])), "55");
    assert_eq!(first_line(&run(&["closed-form", "wheel", "5"])), "121");
    assert_eq!(first_line(&run(&["closed-form", "complete", "7"])), "16807");
    assert_eq!(run(&["closed-form", "hexagon", "3"]).status.code(), Some(2));
    assert_eq!(run(&["closed-form", "cycle", "0"]).status.code(), Some(5));
}

#[test]
fn euler_terms_sum_to_resistance() {
    for form in ["I", "II"] {
        let o = run_on(TRIANGLE, &["euler", "0", "1", "--form", form]);
        let lines = stdout(&o);
        assert_eq!(lines.len(), 4, "{lines:?}");
        assert_eq!(lines[3], "total 2/3");
    }
    let lines = stdout(&run_on(TRIANGLE, &["euler", "0", "1"]));
    assert_eq!(lines[0], "e0 non-bridge 4/9");
    let path = "edge 0 0 1\nedge 1 1 2 2\n";
    let lines = stdout(&run_on(path, &["euler", "0", "1"]));
    assert_eq!(lines, vec!["e0 bridge-separating 1/1", "e1 bridge-other 0/1", "total 1/1"]);
}

#[test]
fn derivative_values() {
    // d/dL0 of r(0,1) = (2/3) at L = 1: (R/(L+R))^2 with R = 2, so 4/9
    assert_eq!(first_line(&run_on(TRIANGLE, &["derivative", "e0", "0", "1"])), "4/9");
    let path = "edge 0 0 1\nedge 1 1 2\n";
    assert_eq!(first_line(&run_on(path, &["derivative", "0", "0", "2"])), "1/1");
    assert_eq!(first_line(&run_on(path, &["derivative", "1", "0", "1"])), "0/1");
}

#[test]
fn reduce_prints_value_then_trace() {
    let lines = stdout(&run_on(&complete(4), &["reduce", "0", "1"]));
    assert_eq!(lines[0], "1/2");
    assert!(lines.iter().any(|l| l.starts_with("delta-y")));
    let lines = stdout(&run_on(TRIANGLE, &["reduce", "0", "1"]));
    assert_eq!(lines[0], "2/3");
    assert!(lines[2..].iter().all(|l| l.starts_with("series") || l.starts_with("parallel")));
}

#[test]
fn identify_counts() {
    // K4 with 0 and 1 merged: a double edge to each of 2, 3, plus edge 2-3
    assert_eq!(first_line(&run_on(&complete(4), &["identify", "0,1"])), "8");
    assert_eq!(first_line(&run_on(&complete(4), &["identify", "0,1", "2,3"])), "4");
    let o = run_on(TRIANGLE, &["identify", "0,1", "--graph"]);
    let lines = stdout(&o);
    // a loop plus a double edge to 2
    assert_eq!(lines[0], "2");
    assert!(lines.iter().any(|l| l.starts_with("edge 0 ")));
    assert_eq!(run_on(TRIANGLE, &["identify", "0,1", "1,2"]).status.code(), Some(5));
}

#[test]
fn exit_codes() {
    assert_eq!(run_on("edge 0 0 1\nedge 0 1 2\n", &["resistance", "0", "1"]).status.code(), Some(2));
    assert_eq!(run_on("bogus line\n", &["spantree"]).status.code(), Some(2));
    assert_eq!(run(&["resistance", "/nonexistent/graph", "0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["resistance"]).status.code(), Some(2));
    let split = "edge 0 0 1\nedge 1 2 3\n";
    assert_eq!(run_on(split, &["resistance", "0", "1"]).status.code(), Some(3));
    assert_eq!(run_on(split, &["reduce", "0", "1"]).status.code(), Some(3));
    assert_eq!(first_line(&run_on(split, &["spantree"])), "0");
    assert_eq!(run_on(TRIANGLE, &["resistance", "0", "7"]).status.code(), Some(4));
    assert_eq!(run_on(TRIANGLE, &["derivative", "e9", "0", "1"]).status.code(), Some(4));
    assert_eq!(run_on(TRIANGLE, &["reduce", "0", "0"]).status.code(), Some(5));
    let o = run_on("edge 0 0 1\n", &["spantree", "--method", "vertex-del", "--vertex", "0"]);
    assert_eq!(first_line(&o), "1");
    let bowtie = "edge 0 0 1\nedge 1 1 2\nedge 2 2 0\nedge 3 2 3\nedge 4 3 4\nedge 5 4 2\n";
    let o = run_on(bowtie, &["spantree", "--method", "vertex-del", "--vertex", "2"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cut vertex"));
}

#[test]
fn verify_runs_and_is_stable() {
    let args = ["verify", "--seed", "5", "--count", "4", "--tags", "shorting,cutting,foster,derivative"];
    let a = run(&args);
    assert!(a.status.success());
    let lines = stdout(&a);
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.split('\t').nth(4) == Some("pass")));
    assert_eq!(stdout(&run(&args)), lines);
    assert_eq!(run(&["verify", "--tags", "nonsense"]).status.code(), Some(2));
}

#[test]
fn output_is_stable_across_runs() {
    let k5 = complete(5);
    let a = run_on(&k5, &["euler", "0", "4", "--form", "II"]);
    let b = run_on(&k5, &["euler", "0", "4", "--form", "II"]);
    assert_eq!(a.stdout, b.stdout);
}
