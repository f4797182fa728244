use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const P5: &str = "5\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n";

fn diamaug(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diamaug"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn p5_unit_cost() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "p5.txt", P5);
    for mode in ["metric", "general", "brute"] {
        let r = json(&diamaug(&["solve", "--tree", s(&tree), "--cost", "const", "1", "--mode", mode]));
        assert_eq!(r["u"], 1, "{mode}");
        assert_eq!(r["v"], 5, "{mode}");
        assert_eq!(r["diameter_before"], 4);
        assert_eq!(r["diameter_after"], 2);
        assert_eq!(r["mode"], mode);
    }
}

#[test]
fn golden_report_without_timing() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "p5.txt", P5);
    let out = diamaug(&["solve", "--tree", s(&tree), "--cost", "const", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let cut = text.find(",\"wall_time_ms\"").unwrap();
    assert_eq!(
        &text[..cut],
        r#"{"u":1,"v":5,"cost":1,"diameter_before":4,"diameter_after":2,"mode":"metric","n":5"#
    );
}

#[test]
fn tree_distance_never_helps() {
    let dir = TempDir::new().unwrap();
    let tree = dir.path().join("t.txt");
    let gen = diamaug(&["gen", "--n", "30", "--cost-model", "none", "--seed", "4", "--tree-out", s(&tree)]);
    assert!(gen.status.success());
    let r = json(&diamaug(&["solve", "--tree", s(&tree), "--cost", "treedist"]));
    assert_eq!(r["diameter_after"], r["diameter_before"]);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3\n1 2 1\n");
    let cycle = write(&dir, "cycle.txt", "3\n1 2 1\n2 1 1\n");
    let p5 = write(&dir, "p5.txt", P5);
    let small = write(&dir, "m.txt", "0 1\n1 0\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["solve", "--tree", s(&bad), "--cost", "const", "1"],
        vec!["solve", "--tree", s(&cycle), "--cost", "const", "1"],
        vec!["solve", "--tree", "/nonexistent/tree.txt", "--cost", "const", "1"],
        vec!["solve", "--tree", s(&p5), "--cost", "const", "-1"],
        vec!["solve", "--tree", s(&p5), "--cost", "bogus"],
        vec!["solve", "--tree", s(&p5), "--cost", "matrix", s(&small)],
        vec!["approx", "--tree", s(&p5), "--cost", "const", "1", "--epsilon", "0"],
        vec!["approx", "--tree", s(&p5), "--cost", "const", "1", "--epsilon", "-0.5"],
        vec!["gen", "--n", "1"],
        vec!["solve", "--tree", s(&p5)],
    ];
    for args in cases {
        assert_eq!(diamaug(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn metric_violation_exits_4() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "p3.txt", "3\n1 2 1\n2 3 1\n");
    // c(1,3) = 9 exceeds c(1,2) + d(2,3) = 2.
    let matrix = write(&dir, "m.txt", "0 1 9\n1 0 1\n9 1 0\n");
    for cmd in [
        vec!["solve", "--tree", s(&tree), "--cost", "matrix", s(&matrix)],
        vec!["approx", "--tree", s(&tree), "--cost", "matrix", s(&matrix), "--epsilon", "1"],
        vec!["decide", "--tree", s(&tree), "--cost", "matrix", s(&matrix), "--lambda", "2"],
    ] {
        assert_eq!(diamaug(&cmd).status.code(), Some(4), "{cmd:?}");
    }
    let r = json(&diamaug(&["solve", "--tree", s(&tree), "--cost", "matrix", s(&matrix), "--mode", "general"]));
    assert_eq!(r["diameter_after"], 2);
}

#[test]
fn decide_on_p5() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "p5.txt", P5);
    let run = |lambda: &str| json(&diamaug(&["decide", "--tree", s(&tree), "--cost", "const", "1", "--lambda", lambda]));
    let yes = run("2");
    assert!(yes["u"].is_u64());
    assert!(yes["diameter_after"].as_f64().unwrap() <= 2.0);
    let no = run("1.5");
    assert!(no["u"].is_null() && no["diameter_after"].is_null());
    assert!(!run("4")["u"].is_null());
}

#[test]
fn approx_on_p5() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "p5.txt", P5);
    let r = json(&diamaug(&["approx", "--tree", s(&tree), "--cost", "const", "1", "--epsilon", "0.1"]));
    assert!(r["diameter_after"].as_f64().unwrap() <= 2.2);
    let r = json(&diamaug(&["approx", "--tree", s(&tree), "--cost", "const", "1", "--epsilon", "10"]));
    assert!(r["diameter_after"].as_f64().unwrap() <= 22.0);
    assert_eq!(r["epsilon"], 10);
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |tag: &str, seed: &str| {
        let (t, c) = (dir.path().join(format!("t{tag}")), dir.path().join(format!("c{tag}")));
        let out = diamaug(&["gen", "--n", "25", "--seed", seed, "--tree-out", s(&t), "--cost-out", s(&c)]);
        assert!(out.status.success());
        (std::fs::read(t).unwrap(), std::fs::read(c).unwrap())
    };
    assert_eq!(run("a", "7"), run("b", "7"));
    assert_ne!(run("c", "7"), run("d", "8"));

    let out = diamaug(&["gen", "--n", "2", "--cost-model", "none"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "2");
    assert!(lines[1].starts_with("1 2 "));
}

#[test]
fn metric_and_brute_agree_on_generated_instances() {
    let dir = TempDir::new().unwrap();
    for seed in 0..6 {
        let (t, c) = (dir.path().join("t"), dir.path().join("c"));
        let model = ["path", "caterpillar", "random-tree"][seed % 3];
        let out = diamaug(&[
            "gen", "--n", "18", "--model", model, "--seed", &seed.to_string(), "--tree-out", s(&t),
            "--cost-out", s(&c),
        ]);
        assert!(out.status.success());
        let solve = |cost: &[&str], mode: &str| {
            let mut args = vec!["solve", "--tree", s(&t), "--mode", mode, "--cost"];
            args.extend_from_slice(cost);
            json(&diamaug(&args))["diameter_after"].as_f64().unwrap()
        };
        for cost in [vec!["coords", s(&c)], vec!["const", "20"]] {
            let (fast, brute) = (solve(&cost, "metric"), solve(&cost, "brute"));
            assert!((fast - brute).abs() <= 1e-9 * brute, "seed {seed} {cost:?}: {fast} vs {brute}");
        }
    }
}

#[test]
fn general_matches_brute_on_matrices() {
    let dir = TempDir::new().unwrap();
    for seed in 0..5 {
        let (t, c) = (dir.path().join("t"), dir.path().join("c"));
        let out = diamaug(&[
            "gen", "--n", "15", "--cost-model", "matrix", "--seed", &seed.to_string(), "--tree-out", s(&t),
            "--cost-out", s(&c),
        ]);
        assert!(out.status.success());
        let run = |mode: &str| json(&diamaug(&["solve", "--tree", s(&t), "--cost", "matrix", s(&c), "--mode", mode]));
        let general = run("general");
        assert_eq!(general["diameter_after"], run("brute")["diameter_after"]);
        assert!(general["realizing_u"].is_u64());
    }
}

#[test]
fn bench_prints_csv() {
    let out = diamaug(&["bench", "--sizes", "50,100", "--repeats", "1", "--mode", "general"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,mode,mean_ms");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("50,general,"));
    assert!(lines[2].starts_with("100,general,"));
}
