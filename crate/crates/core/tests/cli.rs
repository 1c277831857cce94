use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use halfspec::io::{read_coeffs, read_grid, write_grid, Format};
use halfspec::transform::{inverse, GridSamples, ModeWindow, TwistedCoeffs};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> (Output, Option<Value>) {
    let out = Command::new(env!("CARGO_BIN_EXE_halfspec"))
        .args(args)
        .env_remove("HALFSPEC_PRECISION")
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).ok();
    (out, json)
}

fn check_passed(report: &Value, name: &str) -> bool {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["passed"]
        .as_bool()
        .unwrap()
}

#[test]
fn forward_on_psi0_gives_unit_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let (o, report) = run(&[
        "transform",
        "--input",
        fixture("psi0.csv").to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--K",
        "8",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(check_passed(&report.unwrap(), "parseval_gap"));
    let c = read_coeffs(&out, Format::Csv).unwrap();
    for (k, v) in c.iter() {
        let want = if k == 0 { 1.0 } else { 0.0 };
        assert!(
            (v - Complex64::new(want, 0.0)).norm() < 1e-14,
            "k = {k}: {v}"
        );
    }
}

#[test]
fn random_file_round_trip_through_json() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = ModeWindow::new(16).unwrap();
    let values = (0..w.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let c = TwistedCoeffs::new(w, values).unwrap();
    let g = inverse(&c, 64).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.csv");
    let coeffs = dir.path().join("c.json");
    let back = dir.path().join("back.csv");
    write_grid(&grid, &g, Format::Csv).unwrap();

    let (o, r) = run(&[
        "transform",
        "--input",
        grid.to_str().unwrap(),
        "--output",
        coeffs.to_str().unwrap(),
        "--K",
        "16",
    ]);
    assert!(o.status.success());
    assert!(check_passed(&r.unwrap(), "round_trip"));
    let (o, r) = run(&[
        "transform",
        "--direction",
        "inverse",
        "--input",
        coeffs.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
        "--N",
        "64",
    ]);
    assert!(o.status.success());
    assert!(check_passed(&r.unwrap(), "round_trip"));
    let g2 = read_grid(&back, Format::Csv).unwrap();
    assert!(g2.max_abs_diff(&g) <= 1e-13);
}

#[test]
fn malformed_csv_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "j,re,im\n0,1,0\n1,zero,0\n").unwrap();
    let (o, _) = run(&["transform", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn failed_check_still_emits_report() {
    // a jump at the wrap point is not band-limited, so Parseval cannot close
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("ramp.csv");
    let g = GridSamples::from_fn(64, |x| Complex64::new(x, 0.0)).unwrap();
    write_grid(&p, &g, Format::Csv).unwrap();
    let (o, report) = run(&["transform", "--input", p.to_str().unwrap(), "--K", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let report = report.expect("valid JSON on stdout");
    assert!(!check_passed(&report, "parseval_gap"));
    assert!(check_passed(&report, "round_trip"));
}

#[test]
fn solve_exp_pi() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.csv");
    let (o, report) = run(&[
        "solve",
        "--input",
        fixture("exp_pi.csv").to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let report = report.unwrap();
    assert!(report["outputs"]["antiperiodicity_gap"].as_f64().unwrap() <= 1e-12);
    assert_eq!(report["outputs"]["min_multiplier"].as_f64().unwrap(), 0.5);
    let u = read_grid(&out, Format::Csv).unwrap();
    let want = GridSamples::from_fn(128, |x| {
        Complex64::from_polar(2.0, std::f64::consts::PI * x)
    })
    .unwrap();
    assert!(u.max_abs_diff(&want) <= 1e-12);
}

#[test]
fn zeta_det_report() {
    let (o, report) = run(&["zeta-det"]);
    assert!(o.status.success());
    let r = report.unwrap();
    assert!(check_passed(&r, "det_eq_2"));
    let det = r["outputs"]["closed_form"]["determinant"].as_f64().unwrap();
    assert!((det - 2.0).abs() < 1e-9);
    assert!(r["outputs"]["standard_operator"]["deriv_at_zero_with_zero_mode"].is_number());
}

#[test]
fn heat_trace_defaults_show_both_reference_gaps() {
    let (o, report) = run(&["heat-trace"]);
    assert!(o.status.success());
    let r = report.unwrap();
    assert_eq!(r["outputs"]["samples"].as_array().unwrap().len(), 20);
    let fit = &r["outputs"]["leading_coefficient"];
    assert!(fit["gap_inv_sqrt_pi"].as_f64().unwrap() > 1.0);
    assert!(fit["gap_half"].as_f64().unwrap() > 1.0);
    assert!(fit["gap_sqrt_pi"].as_f64().unwrap() < 1e-6);
}

#[test]
fn spectral_flow_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let curves = dir.path().join("curves.csv");
    let (o, r) = run(&[
        "spectral-flow",
        "--family",
        fixture("scalar_down.json").to_str().unwrap(),
        "--K",
        "4",
        "--output",
        curves.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(r.unwrap()["outputs"]["flow"], -1);
    let text = std::fs::read_to_string(&curves).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header.split(',').count(), 9);
    assert!(header.starts_with("t,lambda_1"));

    for (name, want) in [
        ("scalar_up.json", 1),
        ("rank_one.json", -1),
        ("zero.json", 0),
    ] {
        let (o, r) = run(&["spectral-flow", "--family", fixture(name).to_str().unwrap()]);
        assert!(o.status.success(), "{name}");
        assert_eq!(r.unwrap()["outputs"]["flow"], want, "{name}");
    }
}

#[test]
fn endpoint_on_spectrum_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.json");
    std::fs::write(&p, r#"{"type": "scalar_shift", "c": -0.5}"#).unwrap();
    let (o, _) = run(&["spectral-flow", "--family", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn embed_norm_values() {
    let (o, r) = run(&["embed-norm", "--N", "0,10,100", "--s", "-2"]);
    assert!(o.status.success());
    let rows = r.unwrap()["outputs"]["tail_norms"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(rows.len(), 3);
    let v0 = rows[0]["norm"]["value"].as_f64().unwrap();
    assert!((v0 - 1.0 / 1.25f64.sqrt()).abs() < 1e-15);
}

#[test]
fn unsupported_precision_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_halfspec"))
        .arg("zeta-det")
        .env("HALFSPEC_PRECISION", "single")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_halfspec"))
        .arg("zeta-det")
        .env("HALFSPEC_PRECISION", "double")
        .output()
        .unwrap();
    assert!(out.status.success());
}
