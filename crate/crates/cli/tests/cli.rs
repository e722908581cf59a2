use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn elastnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elastnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn bound_discrete_mesh() {
    let out = elastnet(&["bound", "--n", "10", "--mode", "discrete", "--zeta", "10"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0.3166667");
}

#[test]
fn bound_continuous_limit() {
    let out = elastnet(&["bound", "--n", "1e9", "--mode", "continuous"]);
    assert_eq!(stdout(&out).trim(), "0.3333333");
    let out = elastnet(&["bound", "--n", "10", "--mode", "continuous"]);
    assert_eq!(stdout(&out).trim(), "0.3150000");
}

#[test]
fn tradeoff_value() {
    let out = elastnet(&[
        "tradeoff", "--a", "0.1623", "--b", "0.0095", "--c", "0.0048", "--n", "1000", "--m", "1049",
    ]);
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 0.1519).abs() < 5e-5);
}

#[test]
fn exit_codes_follow_error_class() {
    assert_eq!(elastnet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(elastnet(&["bound", "--n", "1"]).status.code(), Some(3));
    assert_eq!(elastnet(&["bound", "--n", "10", "--zeta", "11"]).status.code(), Some(3));
    assert_eq!(elastnet(&["metrics", "/definitely/not/here.txt"]).status.code(), Some(5));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("loop.txt");
    fs::write(&bad, "0 1\n1 1\n").unwrap();
    let out = elastnet(&["metrics", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let big = dir.path().join("big.txt");
    let g = elastnet(&["generate", "--family", "mesh", "--n", "45"]);
    fs::write(&big, &g.stdout).unwrap();
    let out = elastnet(&["elasticity", big.to_str().unwrap(), "--kind", "random", "--model", "lp"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn generate_metrics_and_attack() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.txt");
    let out = elastnet(&[
        "generate", "--family", "near_regular", "--rows", "31", "--cols", "32", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let m = stdout(&elastnet(&["metrics", path.to_str().unwrap()]));
    assert!(m.starts_with("nodes 992\nlinks 1921\n"), "{m}");

    let star = dir.path().join("star.txt");
    fs::write(&star, "0 1\n0 2\n0 3\n0 4\n").unwrap();
    let seq = stdout(&elastnet(&["attack", star.to_str().unwrap(), "--kind", "highest_degree"]));
    assert_eq!(seq.lines().next(), Some("0"));
    assert_eq!(seq.lines().count(), 5);
}

#[test]
fn elasticity_of_star() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.txt");
    let edges: String = (1..10).map(|l| format!("0 {l}\n")).collect();
    fs::write(&star, edges).unwrap();
    let csv = stdout(&elastnet(&["elasticity", star.to_str().unwrap(), "--kind", "highest_degree"]));
    assert!(csv.contains("\n0.1000000,0\n"), "{csv}");
    assert!(csv.contains("# elasticity=0.05000000 "), "{csv}");
}

fn write_config(dir: &Path, seed: u64) -> std::path::PathBuf {
    let text = format!(
        "\
[experiment]
output_dir = out
global_seed = {seed}

[topology gilbert]
family = gilbert
n = 40
p = 0.15

[topology pa]
family = preferential_attachment
n = 40
m = 2

[topology ring]
family = watts_strogatz
n = 40
k = 4
p = 0.1
"
    );
    let path = dir.join("exp.ini");
    fs::write(&path, text).unwrap();
    path
}

fn csv_bodies(dir: &Path) -> Vec<(String, String)> {
    let mut files = Vec::new();
    for sub in [dir.to_path_buf(), dir.join("curves")] {
        let mut names: Vec<_> = fs::read_dir(&sub)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "csv"))
            .collect();
        names.sort();
        for p in names {
            let body: String = fs::read_to_string(&p)
                .unwrap()
                .lines()
                .filter(|l| !l.starts_with('#'))
                .map(|l| format!("{l}\n"))
                .collect();
            files.push((p.strip_prefix(dir).unwrap().display().to_string(), body));
        }
    }
    files
}

#[test]
fn run_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), 11);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let status = elastnet(&["run", cfg.to_str().unwrap(), "--output-dir", out.to_str().unwrap()]);
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    }
    let (ba, bb) = (csv_bodies(&a), csv_bodies(&b));
    assert_eq!(ba.len(), 5 + 9);
    assert_eq!(ba, bb);
    assert!(a.join("run.log").exists());

    let c = dir.path().join("c");
    let cfg2 = write_config(dir.path(), 12);
    elastnet(&["run", cfg2.to_str().unwrap(), "--output-dir", c.to_str().unwrap()]);
    assert_ne!(csv_bodies(&c), ba);
}
