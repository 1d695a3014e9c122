//! Runs the `normcov` binary on small inputs and checks output and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normcov")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
const C9: &str = "9 9\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n0 8\n";

#[test]
fn gen_is_deterministic_and_writes_files() {
    let dir = TempDir::new().unwrap();
    let a = run(&["gen", "--n", "20", "--d", "3", "--seed", "5"]);
    let b = run(&["gen", "--n", "20", "--d", "3", "--seed", "5"]);
    let c = run(&["gen", "--n", "20", "--d", "3", "--seed", "6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert!(stdout(&a).lines().any(|l| l == "20 30"));

    let out = dir.path().join("g.txt");
    let o = run(&["gen", "--n", "20", "--d", "3", "--seed", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), stdout(&a));
}

#[test]
fn invalid_parameters_are_input_errors() {
    let o = run(&["gen", "--n", "5", "--d", "3"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("even"), "{}", stderr(&o));
    for d in ["0", "1", "2"] {
        let o = run(&["pipeline", "--n", "10", "--d", d]);
        assert_eq!(code(&o), 4);
        assert!(stderr(&o).contains("d must be at least 3"), "{}", stderr(&o));
    }
    for d in ["1", "3,2"] {
        let o = run(&["experiment", "--n", "10", "--d", d, "--trials", "1"]);
        assert_eq!(code(&o), 4);
    }
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(code(&run(&["gen", "--n", "10"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["cover", "/nonexistent/graph.txt"])), 5);
}

#[test]
fn malformed_graphs_are_rejected() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("loop", "2 1\n0 0\n"),
        ("dup", "3 2\n0 1\n1 0\n"),
        ("range", "2 1\n0 2\n"),
        ("count", "3 2\n0 1\n"),
        ("empty", "# nothing\n"),
    ] {
        let g = write(&dir, name, text);
        let o = run(&["cover", &g]);
        assert_eq!(code(&o), 4, "{name}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn cover_requires_no_isolated_vertices() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g", "4 2\n0 1\n1 2\n");
    let o = run(&["cover", &g]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
}

#[test]
fn star_is_its_own_cover() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k13", "4 3\n0 1\n0 2\n0 3\n");
    let o = run(&["cover", &g]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "cover k=3\n0 1\n0 2\n0 3\n");
}

#[test]
fn cover_then_check_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c9", C9);
    let cover = dir.path().join("cover.txt");
    let trace = dir.path().join("trace.json");
    let o = run(&[
        "cover",
        &g,
        "--out",
        cover.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(fs::read_to_string(&cover).unwrap().starts_with("cover k=2"));
    json(&fs::read_to_string(&trace).unwrap());

    let o = run(&["check", &g, "--cover", cover.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&stdout(&o));
    assert_eq!(v["nice"], "Nice", "{v}");

    let o = run(&["cover", &g, "--format", "json"]);
    assert_eq!(code(&o), 0);
    json(&stdout(&o));
}

#[test]
fn check_reports_counterexamples_and_budget_exhaustion() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5", C5);
    // two cover components on the 5-cycle leave exactly one good vertex,
    // whether or not the last vertex is covered
    for (name, text, complete) in
        [("bad", "cover k=2\n0 1\n2 3\n3 4\n", true), ("disjoint", "cover k=2\n0 1\n2 3\n", false)]
    {
        let bad = write(&dir, name, text);
        let o = run(&["check", &g, "--cover", &bad]);
        assert_eq!(code(&o), 1, "{}", stderr(&o));
        let v = json(&stdout(&o));
        let cycle = v["nice"]["NotNice"].as_array().expect("counterexample cycle");
        assert_eq!(cycle.len(), 5, "{v}");
        assert_eq!(v["covers_all_vertices"], complete);
    }

    let good = write(&dir, "good", "cover k=2\n0 1\n1 2\n3 4\n");
    let o = run(&["check", &g, "--cover", &good, "--node-budget", "1"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));

    let not_star = write(&dir, "ns", "cover k=2\n0 1\n1 2\n2 3\n");
    assert_eq!(code(&run(&["check", &g, "--cover", &not_star])), 4);
    let not_edge = write(&dir, "ne", "cover k=2\n0 2\n");
    assert_eq!(code(&run(&["check", &g, "--cover", &not_edge])), 4);
}

#[test]
fn oracle_modes() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5", C5);
    let c4 = write(&dir, "c4", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let k3 = write(&dir, "k3", "3 3\n0 1\n1 2\n0 2\n");

    let o = run(&["oracle", &c4, "--mode", "normal"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&["oracle", &c5, "--mode", "normal"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert_eq!(code(&run(&["oracle", &c5, "--mode", "nice"])), 1);
    assert_eq!(code(&run(&["oracle", &c4, "--mode", "nice"])), 0);
    for g in [&c4, &c5] {
        assert_eq!(code(&run(&["oracle", g, "--mode", "equivalence"])), 0);
        assert_eq!(code(&run(&["oracle", g, "--mode", "t1"])), 0);
        assert_eq!(code(&run(&["oracle", g, "--mode", "complement"])), 0);
    }
    let c9 = write(&dir, "c9", C9);
    let o = run(&["oracle", &c9, "--mode", "normal"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let c6 = write(&dir, "c6", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    assert_eq!(code(&run(&["oracle", &c6, "--mode", "t1"])), 0);
    // triangles are outside the scope of the nice-cover oracle
    assert_eq!(code(&run(&["oracle", &k3, "--mode", "nice"])), 4);
}

#[test]
fn pipeline_and_experiment_outputs() {
    let o = run(&["pipeline", "--n", "20", "--d", "3", "--seed", "2"]);
    assert!([0, 1, 3].contains(&code(&o)), "{}", stderr(&o));
    let v = json(&stdout(&o));
    for key in ["params", "surgery", "checks", "verdict"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let o = run(&["pipeline", "--n", "20", "--d", "3", "--seed", "2", "--format", "text"]);
    assert!(stdout(&o).contains("verdict"));

    let o = run(&["experiment", "--n", "12,16", "--d", "3", "--trials", "3", "--seed", "9"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[0].starts_with("n,d,"));
    assert!(lines[1].starts_with("12,3,") && lines[2].starts_with("16,3,"));
    let again = run(&["experiment", "--n", "12,16", "--d", "3", "--trials", "3", "--seed", "9"]);
    assert_eq!(stdout(&again), text);

    let o = run(&["experiment", "--n", "12", "--d", "3", "--trials", "2", "--format", "json"]);
    assert!(json(&stdout(&o)).is_array());
    assert!(Path::new(env!("CARGO_BIN_EXE_normcov")).exists());
}
