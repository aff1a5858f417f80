use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clustermin"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("spawn clustermin")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gen_solve_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = run(
        &[
            "gen",
            "--kind",
            "random_points",
            "--count",
            "8",
            "--target-size",
            "3",
            "--seed",
            "5",
            "--out",
            "u.json",
        ],
        d,
    );
    assert_eq!(code(&g), 0, "{}", String::from_utf8_lossy(&g.stderr));

    let s = run(&["solve", "u.json", "--out", "s.json"], d);
    assert!(matches!(code(&s), 0 | 1));
    let v = run(&["verify", "u.json", "s.json"], d);
    assert_eq!(code(&v), 0);

    // reduction path agrees with the native answer
    let r = run(&["solve", "u.json", "--via-reduction", "--out", "r.json"], d);
    assert_eq!(code(&r), code(&s));
    let v = run(&["verify", "u.json", "r.json"], d);
    assert_eq!(code(&v), 0);
}

#[test]
fn clique_from_dimacs_yes_and_no() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // a triangle, a pendant vertex and an isolated one
    std::fs::write(d.join("g.col"), "c test\np edge 5 4\ne 1 2\ne 2 3\ne 1 3\ne 3 4\n").unwrap();
    let g = run(
        &[
            "gen",
            "--from-dimacs",
            "g.col",
            "--target-size",
            "3",
            "--out",
            "k3.json",
        ],
        d,
    );
    assert_eq!(code(&g), 0, "{}", String::from_utf8_lossy(&g.stderr));
    let s = run(&["solve", "k3.json", "--format", "json"], d);
    assert_eq!(code(&s), 0);
    let doc: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert_eq!(doc["answer"]["yes"], true);
    assert_eq!(doc["solution"]["selected"], serde_json::json!([0, 1, 2]));

    run(
        &[
            "gen",
            "--from-dimacs",
            "g.col",
            "--target-size",
            "4",
            "--out",
            "k4.json",
        ],
        d,
    );
    let s = run(&["solve", "k4.json"], d);
    assert_eq!(code(&s), 1);
}

#[test]
fn reduce_writes_receipt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(&["gen", "--count", "6", "--target-size", "3", "--out", "u.json"], d);
    let r = run(&["reduce", "u.json", "--receipt", "rc.json", "--out", "c.json"], d);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    let rc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("rc.json")).unwrap()).unwrap();
    assert_eq!(rc["source_kind"], "udg_is");
    assert_eq!(rc["target_kind"], "cluster_min");
    assert_eq!(rc["decision_threshold"], "3");
    let c: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("c.json")).unwrap()).unwrap();
    assert_eq!(c["kind"], "cluster_min");
    let w = run(&["reduce", "c.json", "--out", "w.json"], d);
    assert_eq!(code(&w), 0);
    let w2 = run(&["reduce", "w.json"], d);
    assert_eq!(code(&w2), 2);
}

#[test]
fn tampered_solution_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(
        &[
            "gen",
            "--count",
            "8",
            "--target-size",
            "3",
            "--seed",
            "1",
            "--out",
            "u.json",
        ],
        d,
    );
    run(&["reduce", "u.json", "--out", "c.json"], d);
    run(&["solve", "c.json", "--out", "s.json"], d);
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("s.json")).unwrap()).unwrap();
    doc["solution"]["objective"] = serde_json::json!("12345");
    std::fs::write(d.join("bad.json"), doc.to_string()).unwrap();
    assert_eq!(code(&run(&["verify", "c.json", "s.json"], d)), 0);
    assert_eq!(code(&run(&["verify", "c.json", "bad.json"], d)), 1);
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(
        &[
            "gen",
            "--count",
            "18",
            "--target-size",
            "9",
            "--seed",
            "3",
            "--out",
            "u.json",
        ],
        d,
    );
    run(&["reduce", "u.json", "--out", "c.json"], d);
    let s = run(
        &["solve", "c.json", "--algorithm", "exhaustive", "--node-budget", "5"],
        d,
    );
    assert_eq!(code(&s), 3, "{}", String::from_utf8_lossy(&s.stderr));
}

#[test]
fn usage_and_data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(&["frobnicate"], d)), 2);
    assert_eq!(code(&run(&["solve", "missing.json"], d)), 2);
    std::fs::write(d.join("junk.json"), "{\"kind\": \"udg_is\", \"nope\": 1}").unwrap();
    let o = run(&["solve", "junk.json"], d);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn harness_bench_render() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let h = run(
        &[
            "harness",
            "--trials",
            "30",
            "--max-size",
            "7",
            "--workers",
            "2",
            "--format",
            "json",
        ],
        d,
    );
    assert_eq!(code(&h), 0);
    let rep: serde_json::Value = serde_json::from_slice(&h.stdout).unwrap();
    assert_eq!(rep["agreements"], 30);

    let h = run(
        &["harness", "--problem", "clique", "--trials", "20", "--max-size", "7"],
        d,
    );
    assert_eq!(code(&h), 0);
    assert!(String::from_utf8_lossy(&h.stdout).contains("0 disagreements"));

    let b = run(&["bench", "--sizes", "8,10", "--instances", "2", "--format", "json"], d);
    assert_eq!(code(&b), 0);
    let rep: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(rep["rows"].as_array().unwrap().len(), 2);

    run(&["gen", "--count", "5", "--target-size", "2", "--out", "u.json"], d);
    let svg = run(&["render", "u.json"], d);
    assert_eq!(code(&svg), 0);
    let text = String::from_utf8_lossy(&svg.stdout);
    assert!(text.contains("<svg"));
    assert_eq!(text.matches("<circle").count(), 5);

    // same seed, same bytes
    run(&["gen", "--count", "5", "--target-size", "2", "--out", "u2.json"], d);
    assert_eq!(
        std::fs::read(d.join("u.json")).unwrap(),
        std::fs::read(d.join("u2.json")).unwrap()
    );
}
