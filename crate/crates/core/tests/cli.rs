use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use synclab::graph::load_edge_list;
use synclab::harness::read_phase_table;

fn synclab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synclab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = synclab(&["gen", "--type", "wsg", "--n", "100", "--k", "20", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let g = load_edge_list(&out).unwrap();
    assert_eq!(g.n(), 100);
    assert_eq!(g.edge_count(), 100 * 20);
    assert!(stdout(&o).starts_with("# synclab "));
}

#[test]
fn every_subcommand_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let theta = dir.path().join("t.txt");
    assert!(synclab(&[
        "gen",
        "--type",
        "er",
        "--n",
        "12",
        "--p",
        "0.5",
        "--seed",
        "3",
        "--out",
        p(&g)
    ])
    .status
    .success());
    fs::write(
        &theta,
        (0..12).map(|i| format!("{}\n", 0.1 * i as f64)).collect::<String>(),
    )
    .unwrap();

    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "--type", "er", "--n", "30", "--p", "0.2", "--seed", "11"],
        vec!["descend", "--graph", p(&g), "--seed", "5", "--trace-every", "50"],
        vec![
            "phase", "--n-min", "6", "--n-max", "10", "--n-step", "2", "--p-grid", "0:1:0.5", "--trials", "4",
        ],
        vec!["twisted", "--n", "40"],
        vec!["classify", "--graph", p(&g), "--theta", p(&theta)],
        vec![
            "check",
            "--graph",
            p(&g),
            "--theta",
            p(&theta),
            "--p",
            "0.5",
            "--delta",
            "0.5",
            "--samples",
            "50",
        ],
    ];
    for args in runs {
        let a = synclab(&args);
        let b = synclab(&args);
        assert_eq!(
            a.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn phase_output_independent_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut tables = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("phase{threads}.csv"));
        let o = synclab(&[
            "phase",
            "--n-min",
            "8",
            "--n-max",
            "12",
            "--n-step",
            "4",
            "--c-grid",
            "0:2:1",
            "--trials",
            "5",
            "--threads",
            threads,
            "--out",
            p(&out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        tables.push(fs::read(&out).unwrap());
        let cells = read_phase_table(&out).unwrap();
        assert_eq!(cells.len(), 6);
        assert!(out.with_extension("curves.csv").exists());
    }
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn twisted_rows() {
    let o = synclab(&["twisted", "--n", "6", "--k-min", "1", "--k-max", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "k,mu,lambda2_min");
    let row = |i: usize| -> Vec<f64> { data[i].split(',').map(|v| v.parse().unwrap()).collect() };
    let (r1, r2) = (row(1), row(2));
    assert_eq!((r1[0], r1[1]), (1.0, 0.4));
    assert!((r1[2] - 0.5).abs() < 1e-12, "{r1:?}");
    assert_eq!((r2[0], r2[1]), (2.0, 0.8));
    assert!((r2[2] + 1.0).abs() < 1e-12, "{r2:?}");
}

#[test]
fn classify_and_check_formats() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let theta = dir.path().join("t.txt");
    assert!(synclab(&["gen", "--type", "cycle", "--n", "20", "--out", p(&g)])
        .status
        .success());
    let twisted: String = (0..20)
        .map(|l| format!("{}\n", std::f64::consts::TAU * l as f64 / 20.0))
        .collect();
    fs::write(&theta, twisted).unwrap();

    let text = stdout(&synclab(&["classify", "--graph", p(&g), "--theta", p(&theta)]));
    assert!(text.contains("verdict: local-min-candidate"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("lambda2: ")));

    let text = stdout(&synclab(&["check", "--graph", p(&g), "--theta", p(&theta)]));
    assert!(text.contains("theorem1: FAIL"), "{text}");
    assert!(text.contains("proposition: FAIL"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("mu=")));
}

#[test]
fn help_lists_defaults() {
    let o = synclab(&["phase", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for flag in [
        "--n-min",
        "--n-max",
        "--n-step",
        "--p-grid",
        "--c-grid",
        "--trials",
        "--seed",
        "--threads",
        "--out",
        "--fixed-graph",
    ] {
        assert!(text.contains(flag), "missing {flag}");
    }
    for default in [
        "[default: 50]",
        "[default: 0.005]",
        "[default: 1000]",
        "[default: 0.00000001]",
        "[default: 0:1:0.02]",
    ] {
        assert!(text.contains(default), "missing {default}\n{text}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        synclab(&["gen", "--type", "path", "--n", "5", "--bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(
        synclab(&["gen", "--type", "wsg", "--n", "6", "--k", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        synclab(&[
            "classify",
            "--graph",
            "/nonexistent/g.txt",
            "--theta",
            "/nonexistent/t.txt"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(synclab(&["phase", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(synclab(&["--version"]).status.code(), Some(0));

    // energies of 1e308-weight edges overflow on the first evaluation
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let theta = dir.path().join("t.txt");
    fs::write(&g, "n 3\n0 1 1e308\n1 2 1e308\n").unwrap();
    fs::write(&theta, "0\n3.14159\n0\n").unwrap();
    let o = synclab(&["descend", "--graph", p(&g), "--theta", p(&theta)]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}
