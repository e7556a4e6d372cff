use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fuzzy_metrics::generators::{gen_u0, gen_un};
use fuzzy_metrics::io::save;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzy-metrics"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fixtures(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let paths = (
        dir.join("u0.json"),
        dir.join("u1.json"),
        dir.join("u5.json"),
    );
    save(&gen_u0(1024), &paths.0).unwrap();
    save(&gen_un(1, 1024), &paths.1).unwrap();
    save(&gen_un(5, 1024), &paths.2).unwrap();
    paths
}

fn value(out: &Output) -> f64 {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(out).trim().parse().unwrap()
}

#[test]
fn dist_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let (u0, u1, u5) = fixtures(dir.path());
    let s = |p: &PathBuf| p.to_str().unwrap().to_owned();

    let dend = value(&run(&[
        "dist",
        "dend",
        &s(&u1),
        &s(&u0),
        "--levels",
        "1024",
    ]));
    assert!((dend - 1.0 / 3.0).abs() <= 0.01);

    let d0 = value(&run(&["dist", "d0", &s(&u5), &s(&u0)]));
    assert!((d0 - 1.0).abs() <= 0.01);

    let same = run(&["dist", "dinf", &s(&u0), &s(&u0)]);
    assert_eq!(stdout(&same), "0.000000\n");

    let h0 = run(&["dist", "hausdorff0", &s(&u1), &s(&u0)]);
    assert_eq!(stdout(&h0), "0.000000\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (u0, u1, _) = fixtures(dir.path());
    let s = |p: &PathBuf| p.to_str().unwrap().to_owned();

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"format_version": "1", "space": "real-line", "levels": [
            {"alpha": 0.0, "intervals": [[0, 2]]},
            {"alpha": 1.0, "intervals": [[0, 3]]}]}"#,
    )
    .unwrap();
    let out = run(&["dist", "dinf", &s(&bad), &s(&u0)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("record 1"));

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "not json").unwrap();
    assert_eq!(
        run(&["dist", "dinf", &s(&garbage), &s(&u0)]).status.code(),
        Some(2)
    );

    assert_eq!(
        run(&["dist", "d0", &s(&u1), &s(&u0), "--tol", "0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["dist", "dinf", &s(&u1), &s(&u0), "--levels", "0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn example_paper_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&[
        "example-paper",
        "--n-max",
        "20",
        "--levels",
        "1024",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,K,d_inf,d0,h_end,h_cut0,h_cut1"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 20);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0], (i + 1) as f64);
        assert!((0.99..=1.01).contains(&row[3]));
        assert_eq!((row[5], row[6]), (0.0, 0.0));
    }
    assert!(rows[19][4] < rows[0][4]);

    let again = run(&["example-paper", "--n-max", "20", "--levels", "1024"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn generate_and_jumps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    assert!(run(&["generate", "u0", "--levels", "2048", "--out", p])
        .status
        .success());
    let levels: Vec<f64> = stdout(&run(&["jumps", p]))
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(levels.len(), 1);
    assert!((levels[0] - 0.5).abs() <= 2.0 / 1024.0);

    assert!(
        run(&["generate", "un", "--n", "5", "--levels", "2048", "--out", p])
            .status
            .success()
    );
    assert_eq!(stdout(&run(&["jumps", p])), "");

    assert!(
        run(&["generate", "crisp", "--lo", "-1", "--hi", "1", "--levels", "8", "--out", p])
            .status
            .success()
    );
    assert_eq!(stdout(&run(&["jumps", p, "--levels", "4"])), "");
}

#[test]
fn theorem_check_with_identity_budget() {
    let out = run(&[
        "verify-theorem1",
        "--trials",
        "10",
        "--levels",
        "128",
        "--max-distortion",
        "0",
        "--max-perturbation",
        "0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("passed 10/10 trials"));
}
