use std::path::Path;
use std::process::{Command, Output};

use flowforge::fixtures::{figure_one, instance_a, FIGURE_ONE_WEIGHTS};
use flowforge::{parse_document, write_quadruple};

fn flowforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowforge"))
        .args(args)
        .env_remove("FLOWFORGE_BUDGET")
        .output()
        .expect("run flowforge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn minimize_and_verify_instance_a() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.graph", &write_quadruple("a", &instance_a([1; 6])));
    let o = flowforge(&["minimize", "--input", &a]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("minimum 0\n"), "{text}");
    assert!(text.contains("flow 2 11"), "{text}");

    let o = flowforge(&["verify", "--input", &a, "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("holds"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.graph", "vertices 2\nedge 0 0 1\nnonsense\n");
    let o = flowforge(&["verify", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    // w(C) = 4 forces a search, which a budget of 1 cannot afford
    let four = write(dir.path(), "four.graph", &write_quadruple("four", &instance_a([2, 1, 1, 1, 1, 1])));
    let o = flowforge(&["verify", "--input", &four, "--oracle", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_flowforge"))
        .args(["verify", "--input", &four, "--oracle"])
        .env("FLOWFORGE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let heavy = write(dir.path(), "heavy.graph", &write_quadruple("h", &instance_a([20, 20, 20, 1, 1, 1])));
    assert_eq!(flowforge(&["verify", "--input", &heavy]).status.code(), Some(2));
    let o = flowforge(&["verify", "--input", &heavy, "--mode", "hunt"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sweep_output_is_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str, name: &str| {
        let out = dir.path().join(name);
        let o = flowforge(&[
            "sweep", "--seed", "9", "--count", "300", "--jobs", jobs, "--output", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let one = run("1", "one.csv");
    assert_eq!(one, run("3", "three.csv"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with(
        "instance_id,seed,vertices,edges,circuit_edges,circuit_weight,dimension,min_zero_weight,ratio,method,elapsed,verdict\n"
    ));
    assert_eq!(text.lines().count(), 301);
}

#[test]
fn gen_writes_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gen");
    let o = flowforge(&[
        "gen", "--seed", "3", "--count", "4", "--base", "petersen", "--max-chords", "0", "--min-chords", "0",
        "--max-extra-vertices", "0", "--output", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    for id in 0..4 {
        let p = out.join(format!("instance-3-{id}.graph"));
        let o = flowforge(&["minimize", "--input", p.to_str().unwrap()]);
        let text = stdout(&o);
        let min: u64 = text.lines().next().unwrap().strip_prefix("minimum ").unwrap().parse().unwrap();
        assert!(min > 0, "the Petersen base has no nowhere-zero flow");
        assert!(text.ends_with("4*min < w(C): yes\n"));
    }
}

#[test]
fn convert_round_trip_and_cover() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = "vertices 4\nedge 0 0 1\nedge 1 1 2\nedge 2 2 0\nedge 3 0 3\nedge 4 1 3\nedge 5 2 3\n\
              flow 0 10\nflow 1 01\nflow 2 11\nflow 3 01\nflow 4 11\nflow 5 10\n";
    let z = write(dir.path(), "k4.graph", k4);
    let i = dir.path().join("k4.int");
    assert_eq!(flowforge(&["convert", "--input", &z, "--output", i.to_str().unwrap()]).status.code(), Some(0));
    let ints = std::fs::read_to_string(&i).unwrap();
    assert_eq!(ints.lines().filter(|l| l.starts_with("iflow")).count(), 6);
    let o = flowforge(&["convert", "--input", i.to_str().unwrap()]);
    let back = parse_document(&stdout(&o)).unwrap();
    assert_eq!(back.flow, parse_document(k4).unwrap().flow);
    assert!(back.integer_flow.is_none());

    let o = flowforge(&["cover", "--input", &z]);
    let text = stdout(&o);
    assert!(text.contains("flow = from input"));
    assert!(text.contains("total = 8"), "{text}");

    // instance A's file flow vanishes on C, so cover searches for its own
    let a = write(dir.path(), "a.graph", &write_quadruple("a", &instance_a([1; 6])));
    let text = stdout(&flowforge(&["cover", "--input", &a]));
    assert!(text.contains("flow = searched") && text.contains("total = 8"), "{text}");

    let bridge = write(
        dir.path(),
        "bridge.graph",
        "vertices 6\nedge 0 0 1\nedge 1 1 2\nedge 2 2 0\nedge 3 3 4\nedge 4 4 5\nedge 5 5 3\nedge 6 0 3\n",
    );
    assert_eq!(flowforge(&["cover", "--input", &bridge]).status.code(), Some(2));
}

#[test]
fn audit_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    // the full audit enumerates the class, so keep the class small
    let fig = write(dir.path(), "fig.graph", &write_quadruple("fig", &instance_a([4, 4, 4, 1, 1, 1])));
    let report = dir.path().join("fig.audit");
    let o = flowforge(&["audit", "--input", &fig, "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(report).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 13);
    let o = flowforge(&["audit", "--input", &fig, "--claims-counterexample"]);
    assert_eq!(o.status.code(), Some(2));

    let (q, _, _) = figure_one(&FIGURE_ONE_WEIGHTS);
    let fig = write(dir.path(), "fig1.graph", &write_quadruple("fig", &q));
    let o = flowforge(&["reduce", "--input", &fig]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("resolved: 4*"));
}

#[test]
fn hunt_runs_to_the_end() {
    let dir = tempfile::tempdir().unwrap();
    let archive = dir.path().join("cands");
    let o = flowforge(&[
        "hunt", "--mode", "hunt", "--seed", "5", "--count", "50", "--min-circuit", "9", "--weights",
        "target:36,40", "--archive", archive.to_str().unwrap(), "--output",
        dir.path().join("h.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("candidates=0"));
    let o = flowforge(&["hunt", "--seed", "5", "--count", "5"]);
    assert_eq!(o.status.code(), Some(2));
}
