use std::fs;
use std::path::Path;
use std::process::Command as Process;

use lambda_dicke::phase_diagram::{solve_point, SweepOptions};
use lambda_dicke::{ModelParams, PhaseLabel};
use lambda_dicke_cli::emit::{Cell, Table};

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_lambda-dicke"))
}

fn run(args: &[&str]) -> i32 {
    let mut argv = vec!["lambda-dicke"];
    argv.extend_from_slice(args);
    lambda_dicke_cli::run(argv)
}

fn read_table(path: &Path) -> Table {
    Table::from_csv(&fs::read(path).unwrap()).unwrap()
}

fn num(table: &Table, row: usize, col: &str) -> f64 {
    table.rows[row][table.column(col).unwrap()].as_f64().unwrap()
}

fn text<'a>(table: &'a Table, row: usize, col: &str) -> &'a str {
    match &table.rows[row][table.column(col).unwrap()] {
        Cell::Text(s) => s,
        other => panic!("not text: {other:?}"),
    }
}

#[test]
fn minimize_reference_point_is_normal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["minimize", "--out", out, "--g1", "0.1", "--g2", "0.1", "--T", "0.25"]), 0);
    let t = read_table(&dir.path().join("minimize.csv"));
    assert_eq!(t.rows.len(), 1);
    assert_eq!(text(&t, 0, "label"), "normal");
    for c in ["c13", "c23", "c12", "n1", "n2"] {
        assert_eq!(num(&t, 0, c), 0.0);
    }
    let e = (-0.4f64).exp();
    let z = 1.0 + e + (-4.0f64).exp();
    assert!((num(&t, 0, "p22") - e / z).abs() < 1e-14);
}

#[test]
fn csv_values_parse_back_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["minimize", "--out", out, "--g1", "0.8", "--g2", "0.1", "--T", "0.05"]), 0);
    let t = read_table(&dir.path().join("minimize.csv"));
    let p = ModelParams::new(0.1, 1.0, 1.1, 0.8, 0.8, 0.1);
    let pt = solve_point(&p, 1.0 / 0.05, [0.8, 0.1], &SweepOptions::default()).unwrap();
    assert_eq!(pt.label, PhaseLabel::Sr1);
    assert_eq!(text(&t, 0, "label"), "SR1");
    assert_eq!(num(&t, 0, "n1"), pt.obs.n1);
    assert_eq!(num(&t, 0, "c13"), pt.obs.c13);
    assert_eq!(num(&t, 0, "p33"), pt.obs.p33);
    assert_eq!(num(&t, 0, "f0"), pt.obs.f0);
    assert_eq!(num(&t, 0, "n_local_minima"), pt.n_local_minima as f64);
}

#[test]
fn single_node_sweep_has_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["sweep2d", "--out", out, "--g1", "0.3", "--g2", "0.3"]), 0);
    let text = fs::read_to_string(dir.path().join("sweep2d.csv")).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("kT_over_gap,g1,g2,label,n1,n2,p11,p22,p33,c13,c23,c12,f0,n_local_minima\n"));
}

#[test]
fn reruns_are_byte_identical_and_sidecar_reproduces() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    let args = |dir: &Path, workers: &str| {
        vec![
            "sweep2d".to_string(),
            "--out".into(),
            dir.to_str().unwrap().into(),
            "--g1".into(),
            "0:1.0:9".into(),
            "--g2".into(),
            "0:0.9:7".into(),
            "--T".into(),
            "0.001,0.25".into(),
            "--workers".into(),
            workers.into(),
        ]
    };
    let go = |v: Vec<String>| {
        let mut argv = vec!["lambda-dicke".to_string()];
        argv.extend(v);
        lambda_dicke_cli::run(argv)
    };
    assert_eq!(go(args(a.path(), "1")), 0);
    assert_eq!(go(args(b.path(), "3")), 0);
    let csv_a = fs::read(a.path().join("sweep2d.csv")).unwrap();
    assert_eq!(csv_a, fs::read(b.path().join("sweep2d.csv")).unwrap());

    let meta = a.path().join("sweep2d.meta.toml");
    let meta_str = meta.to_str().unwrap();
    let out_c = c.path().to_str().unwrap();
    assert_eq!(run(&["sweep2d", "--config", meta_str, "--out", out_c]), 0);
    assert_eq!(csv_a, fs::read(c.path().join("sweep2d.csv")).unwrap());

    let t = read_table(&a.path().join("sweep2d.csv"));
    assert_eq!(t.rows.len(), 2 * 9 * 7);
    // Row-major: temperature, then g1, then g2 fastest.
    assert_eq!(num(&t, 1, "g2"), 0.15);
    assert_eq!(num(&t, 7, "g1"), 0.125);
    assert_eq!(num(&t, 63, "kT_over_gap"), 0.25);
}

#[test]
fn scaled_axes_and_metastable_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        r#"
[model]
delta = 0.0
gap = 1.0
omega1 = 1.1
omega2 = 0.8
g1 = 1.43
g2 = 0.2
scale_by_critical = true

[temperature]
kT_over_gap = [0.25]

[features]
metastable = true

[output]
dir = "unused"
basename = "coexist"
"#,
    )
    .unwrap();
    let out = dir.path().join("o");
    assert_eq!(
        run(&["minimize", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]),
        0
    );
    let t = read_table(&out.join("coexist.csv"));
    assert_eq!(t.columns[1], "g1_over_g1c");
    assert_eq!(num(&t, 0, "g1_over_g1c"), 1.43);
    assert_eq!(num(&t, 0, "n_local_minima"), 2.0);
    let m = read_table(&out.join("coexist.minima.csv"));
    assert_eq!(m.rows.len(), 2);
    let globals: f64 = (0..2).map(|r| num(&m, r, "is_global")).sum();
    assert_eq!(globals, 1.0);
}

#[test]
fn landscape_shows_pair_forming() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        r#"
[model]
delta = 0.0
gap = 1.0
omega1 = 1.1
omega2 = 0.8
g1 = 0.0
g2 = 0.0
scale_by_critical = true

[temperature]
kT_over_gap = [0.25]

[axes.g1]
min = 1.0
max = 1.5
points = 6

[axes.y1]
min = 0.0
max = 0.8
points = 401
"#,
    )
    .unwrap();
    let out = dir.path().join("o");
    assert_eq!(
        run(&["landscape", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]),
        0
    );
    let t = read_table(&out.join("landscape.csv"));
    assert_eq!(t.rows.len(), 6 * 401);
    let interior_minima = |block: usize| {
        let f: Vec<f64> = (0..401).map(|i| num(&t, block * 401 + i, "f")).collect();
        (1..400).filter(|&i| f[i] < f[i - 1] && f[i] < f[i + 1]).count()
    };
    assert_eq!(interior_minima(0), 0);
    assert_eq!(interior_minima(5), 1);
}

#[test]
fn sweep_t_and_boundary_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["sweepT", "--out", out, "--g1", "0.4:0.9:6", "--T", "0.05,0.1"]), 0);
    let t = read_table(&dir.path().join("sweepT.csv"));
    assert_eq!(t.columns[..2], ["kT_over_gap".to_string(), "g1".to_string()]);
    assert_eq!(t.rows.len(), 12);
    assert_eq!(num(&t, 6, "kT_over_gap"), 0.1);
    assert_eq!(text(&t, 0, "label"), "normal");
    assert_eq!(text(&t, 5, "label"), "SR1");

    assert_eq!(run(&["boundary", "--out", out, "--g2", "0.1", "--T", "0.1", "--format", "json"]), 0);
    let v: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("boundary.json")).unwrap()).unwrap();
    assert_eq!(v[0]["from"], "normal");
    assert_eq!(v[0]["to"], "SR1");
    assert!(v[0]["jump_n1"].as_f64().unwrap() > 0.01);
}

#[test]
fn ztcheck_rejects_nonzero_delta_and_reports_otherwise() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["ztcheck", "--out", out]), 1);

    let cfg = dir.path().join("zt.toml");
    fs::write(
        &cfg,
        "[model]\ndelta = 0.0\ngap = 1.0\nomega1 = 1.1\nomega2 = 0.8\ng1 = 0.0\ng2 = 0.1\nscale_by_critical = true\n\
         [temperature]\nkT_over_gap = [0.0001]\n[axes.g1]\nmin = 1.5\nmax = 3.0\npoints = 4\n",
    )
    .unwrap();
    assert_eq!(run(&["ztcheck", "--config", cfg.to_str().unwrap(), "--out", out]), 0);
    let t = read_table(&dir.path().join("ztcheck.csv"));
    for r in 0..4 {
        assert!(num(&t, r, "y1_rel_err") < 1e-4);
        assert!(num(&t, r, "p33_abs_err") < 1e-3);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();

    let status = bin().args(["minimize", "--bogus"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stderr).contains("--bogus"));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[model]\ndelta = 0.1\nomega3 = 1.0\n").unwrap();
    let status = bin()
        .args(["minimize", "--config", bad.to_str().unwrap(), "--out", out])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let err = String::from_utf8_lossy(&status.stderr);
    assert!(err.contains("omega3") && err.contains("line 3"), "{err}");

    let missing = bin()
        .args(["minimize", "--config", "/nonexistent/run.toml"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));

    // Bracket without a transition: numerical failure.
    let status = bin()
        .args(["boundary", "--out", out, "--g2", "0.1", "--T", "0.25"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let nt = dir.path().join("nt.toml");
    fs::write(&nt, "[boundary]\naxis = \"g1\"\nlo = 0.1\nhi = 0.2\n").unwrap();
    let status = bin()
        .args(["boundary", "--config", nt.to_str().unwrap(), "--out", out])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("no transition"));

    let ok = bin().arg("--help").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
}
