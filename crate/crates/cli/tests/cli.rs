use std::path::Path;
use std::process::{Command, Output};

fn sdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sdc(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn value(s: &str) -> f64 {
    s.parse().expect("number")
}

#[test]
fn uniform_three_weights() {
    let rows = csv_rows(&stdout(&["quadrature", "--family", "uniform", "-M", "3"]));
    let weights: Vec<f64> = rows.iter().filter(|r| r[1] == "weight").map(|r| value(&r[4])).collect();
    let expected = [5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0, -1.0 / 24.0, 1.0 / 3.0, 5.0 / 24.0];
    assert_eq!(weights.len(), 6);
    for (w, e) in weights.iter().zip(expected) {
        assert!((w - e).abs() < 1e-15, "{w} vs {e}");
    }
    let nodes: Vec<f64> = rows.iter().filter(|r| r[1] == "node").map(|r| value(&r[4])).collect();
    assert_eq!(nodes, vec![0.0, 0.5, 1.0]);
}

#[test]
fn lobatto_wn_is_symmetric() {
    let rows = csv_rows(&stdout(&["quadrature", "--family", "lobatto", "-M", "3", "--wn"]));
    assert_eq!(rows.len(), 2);
    assert!((value(&rows[0][4]) - value(&rows[1][4])).abs() < 1e-14);
}

#[test]
fn table1_grid() {
    let text = stdout(&["quadrature", "--table1", "-M", "2..20"]);
    assert!(text.starts_with("m,uniform,chebyshev,legendre,radau,lobatto\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 19);
    assert_eq!(rows[7], ["9", "2.550", "1.270", "1.585", "1.597", "1.000"]);
    assert_eq!(rows[8][3], "1.588");
    assert_eq!(rows[18][1], "1026.313");
}

#[test]
fn trapezoid_coefficients_uniform_three() {
    let rows = csv_rows(&stdout(&[
        "coeffs",
        "--family",
        "uniform",
        "-M",
        "3",
        "--base",
        "trapezoid",
    ]));
    assert_eq!(rows.len(), 2);
    for row in rows {
        for (c, e) in row[3..6].iter().zip([1.0, -2.0, 1.0]) {
            assert!((value(c) - e / 24.0).abs() < 1e-15);
        }
        assert_eq!(row[7], "4");
    }
}

#[test]
fn picard_and_explicit_stability_are_byte_identical() {
    let base = ["stability", "-M", "2", "--corrections", "1", "--scheme"];
    let picard = sdc(&[&base[..], &["picard"]].concat());
    let explicit = sdc(&[&base[..], &["explicit-sdc"]].concat());
    assert!(picard.status.success() && explicit.status.success());
    assert!(picard.stdout.starts_with(b"re,im,abs_rho\n"));
    assert_eq!(picard.stdout.iter().filter(|&&b| b == b'\n').count(), 401 * 401 + 1);
    assert_eq!(picard.stdout, explicit.stdout);
}

#[test]
fn stability_grid_is_row_major_with_real_fastest() {
    let rows = csv_rows(&stdout(&[
        "stability",
        "--scheme",
        "implicit-sdc",
        "-M",
        "3",
        "--re",
        "-2:0",
        "--im",
        "-1:1",
        "--nx",
        "3",
        "--ny",
        "2",
    ]));
    let coords: Vec<(f64, f64)> = rows.iter().map(|r| (value(&r[0]), value(&r[1]))).collect();
    assert_eq!(
        coords,
        vec![
            (-2.0, -1.0),
            (-1.0, -1.0),
            (0.0, -1.0),
            (-2.0, 1.0),
            (-1.0, 1.0),
            (0.0, 1.0)
        ]
    );
    assert!(rows.iter().all(|r| value(&r[2]).is_finite()));
}

#[test]
fn solve_trajectory_matches_exact_solution() {
    let rows = csv_rows(&stdout(&[
        "solve",
        "--problem",
        "linear",
        "--lambda",
        "-1",
        "--scheme",
        "implicit-sdc",
        "--order",
        "4",
        "--steps",
        "20",
        "-T",
        "1",
    ]));
    assert_eq!(rows.len(), 21);
    let last = &rows[20];
    assert_eq!(value(&last[0]), 1.0);
    assert!((value(&last[1]) - (-1.0_f64).exp()).abs() < 1e-7);
}

#[test]
fn converge_reports_orders() {
    let rows = csv_rows(&stdout(&[
        "converge",
        "--problem",
        "vdp",
        "--scheme",
        "sisdc",
        "-M",
        "4",
        "--corrections",
        "3",
        "--meshes",
        "4:512",
    ]));
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0][3], "");
    let last = value(&rows[7][3]);
    assert!((last - 4.0).abs() < 0.2, "{last}");
}

fn json_round_trip(dir: &Path, args: &[&str]) {
    let first = dir.join("first.json");
    let second = dir.join("second.json");
    let mut run = args.to_vec();
    run.extend(["--format", "json", "-o", first.to_str().unwrap()]);
    stdout(&run);
    stdout(&["rerun", first.to_str().unwrap(), "-o", second.to_str().unwrap()]);
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert_eq!(a, b, "{args:?}");
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["config"]["schema_version"], 1);
}

#[test]
fn json_documents_rerun_identically() {
    let dir = tempfile::tempdir().unwrap();
    json_round_trip(
        dir.path(),
        &[
            "converge",
            "--scheme",
            "implicit-sdc",
            "--theta",
            "3",
            "--order",
            "4",
            "--lambda",
            "-2",
            "--meshes",
            "8,16,32",
        ],
    );
    json_round_trip(
        dir.path(),
        &[
            "solve",
            "--problem",
            "pendulum",
            "--scheme",
            "trapezoid-sdc",
            "--nodes",
            "0,1/3,1/2,1",
            "--steps",
            "7",
        ],
    );
    json_round_trip(
        dir.path(),
        &["stability", "--scheme", "picard", "-M", "2", "--nx", "9", "--ny", "7"],
    );
    json_round_trip(
        dir.path(),
        &["coeffs", "--nodes", "0,1/3,1/2,1", "--base", "forward-euler"],
    );
    json_round_trip(dir.path(), &["quadrature", "--family", "radau", "-M", "2..4"]);
}

#[test]
fn rerun_can_switch_format() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("run.json");
    let args = ["coeffs", "-M", "3", "--base", "trapezoid"];
    stdout(&[&args[..], &["--format", "json", "-o", doc.to_str().unwrap()]].concat());
    assert_eq!(
        stdout(&["rerun", doc.to_str().unwrap(), "--format", "csv"]),
        stdout(&args)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(sdc(&["quadrature", "--family", "gauss"]).status.code(), Some(2));
    assert_eq!(
        sdc(&["solve", "--scheme", "picard", "--theta", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sdc(&["solve", "--scheme", "sisdc", "--problem", "pendulum"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sdc(&["converge", "--scheme", "picard", "--meshes", "4:30"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sdc(&["rerun", "/nonexistent/run.json"]).status.code(), Some(2));
    let diverged = sdc(&[
        "solve",
        "--scheme",
        "picard",
        "--lambda",
        "-50",
        "-M",
        "5",
        "-T",
        "1",
        "--steps",
        "1",
        "--tolerance",
        "1e-14",
    ]);
    assert_eq!(diverged.status.code(), Some(1));
}

#[test]
fn unknown_enumerant_lists_valid_values() {
    let err = String::from_utf8(sdc(&["coeffs", "--base", "simpson"]).stderr).unwrap();
    for name in ["trapezoid", "forward-euler", "backward-euler"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn help_lists_schemes_families_and_presets() {
    let top = stdout(&["--help"]);
    assert!(top.contains("--order q"), "{top}");
    let help = stdout(&["converge", "--help"]);
    for name in [
        "picard",
        "explicit-sdc",
        "implicit-sdc",
        "sisdc",
        "modified-sisdc",
        "trapezoid-sdc",
        "uniform",
        "chebyshev",
        "legendre",
        "radau",
        "lobatto",
        "forward-euler",
        "backward-euler",
        "imex-euler",
        "implicit-split-euler",
        "constant",
        "linear",
        "pendulum",
        "vdp",
    ] {
        assert!(help.contains(name), "{name} missing from help");
    }
    assert!(help.contains("Order presets"));
}
