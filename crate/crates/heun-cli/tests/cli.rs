//! End-to-end checks of the `heun` binary: flag parsing, output shape, exit
//! codes, and byte-level determinism.

use std::process::{Command, Output};

fn heun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heun"))
        .args(args)
        .output()
        .expect("binary runs")
}

const CONST_PARAMS: &[&str] = &[
    "--t", "5", "--q", "0", "--alpha", "0", "--beta", "1", "--gamma", "0", "--delta", "0",
    "--epsilon", "0",
];

const TABLE1_PARAMS: &[&str] = &[
    "--t", "4.5", "--q", "-1", "--alpha", "1", "--beta", "-1.5", "--gamma", "-0.14",
    "--delta", "4.32",
];

fn eval_const(extra: &[&str]) -> Output {
    let mut args = vec!["eval"];
    args.extend_from_slice(CONST_PARAMS);
    args.extend_from_slice(&[
        "--from", "0.1", "--to", "0.9", "--n1", "1", "--n2", "100", "--z0", "0.1", "--H0", "1",
        "--H0p", "0",
    ]);
    args.extend_from_slice(extra);
    heun(&args)
}

#[test]
fn eval_constant_solution_csv() {
    let out = eval_const(&[]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z_re,z_im,H_re,H_im,dH_re,dH_im");
    assert_eq!(lines.len(), 101); // header + 100 rows
    for row in &lines[1..] {
        let cols: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols.len(), 6);
        assert!((cols[2] - 1.0).abs() <= 1e-10, "H_re {}", cols[2]);
        assert_eq!(cols[1], 0.0);
    }
    assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
}

#[test]
fn eval_json_shape() {
    let out = eval_const(&["--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "eval");
    assert_eq!(v["n2"], 100);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 100);
    assert!(rows[0]["H_re"].is_number());
    assert!(rows[0]["dH_im"].is_number());
}

#[test]
fn degenerate_t_exits_2_without_output_file() {
    let dir = std::env::temp_dir().join("heun_cli_test_degenerate");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("table.csv");
    let out = heun(&[
        "eval", "--t", "1", "--q", "0", "--alpha", "0", "--beta", "1", "--gamma", "0",
        "--delta", "0", "--epsilon", "0", "--from", "0.2", "--to", "0.9", "--n1", "1",
        "--n2", "100", "--z0", "0.2", "--H0", "1", "--H0p", "0", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    assert!(!out_path.exists());
}

#[test]
fn segment_through_singularity_exits_3() {
    let mut args = vec!["eval"];
    args.extend_from_slice(TABLE1_PARAMS);
    args.extend_from_slice(&[
        "--from", "0.5", "--to", "1.5", "--n1", "1", "--n2", "50", "--z0", "0.5", "--H0", "1",
        "--H0p", "0",
    ]);
    let out = heun(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn pole_hit_exits_4() {
    // puncture 0 lets the segment through, then a grid point lands exactly
    // on the singularity at 0
    let mut args = vec!["eval"];
    args.extend_from_slice(TABLE1_PARAMS);
    args.extend_from_slice(&[
        "--from", "-0.1", "--to", "0.1", "--n1", "1", "--n2", "3", "--z0", "-0.1", "--H0", "1",
        "--H0p", "0", "--puncture", "0", "--beta-refine", "0",
    ]);
    let out = heun(&args);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn invalid_complex_literal_exits_2() {
    let out = eval_const(&["--z0", "1+2i"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_regular_sides_and_counts() {
    let mut args = vec!["eval-regular"];
    args.extend_from_slice(TABLE1_PARAMS);
    args.extend_from_slice(&["--from", "-2.2", "--to", "0.8", "--n1", "10", "--n2", "100"]);
    let out = heun(&args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z_re,z_im,H_re,H_im,dH_re,dH_im,side");
    // n1 split 7:3 over arclength 2.2:0.8 -> 694 + 298 rows
    let left: Vec<&&str> = lines[1..].iter().filter(|l| l.ends_with(",left")).collect();
    let right: Vec<&&str> = lines[1..].iter().filter(|l| l.ends_with(",right")).collect();
    assert_eq!(left.len(), 7 * 99 + 1);
    assert_eq!(right.len(), 3 * 99 + 1);
    // left rows ascend toward 0, right rows continue outward
    let z_of = |l: &str| l.split(',').next().unwrap().parse::<f64>().unwrap();
    assert_eq!(z_of(left[0]), -2.2);
    assert!((z_of(left[left.len() - 1]) + 1e-4).abs() < 1e-12);
    assert!((z_of(right[0]) - 1e-4).abs() < 1e-12);
    assert_eq!(z_of(right[right.len() - 1]), 0.8);
    // seed consistency: first right row carries H(puncture) ≈ 1 + punc·q/(γt)
    let h_first = right[0].split(',').nth(2).unwrap().parse::<f64>().unwrap();
    let expected = 1.0 + 1e-4 * (-1.0 / (-0.14 * 4.5));
    assert!((h_first - expected).abs() < 1e-6, "H {h_first}");
}

#[test]
fn eval_regular_rejects_gamma_zero() {
    let out = heun(&[
        "eval-regular", "--t", "4.5", "--q", "-1", "--alpha", "1", "--beta", "-1.5",
        "--gamma", "0", "--delta", "4.32", "--from", "-1", "--to", "0.5", "--n1", "4",
        "--n2", "50",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convergence_report_shape() {
    let mut args = vec!["convergence"];
    args.extend_from_slice(TABLE1_PARAMS);
    args.extend_from_slice(&[
        "--from", "0.01", "--to", "0.5", "--n1", "1", "--n2", "100", "--z0", "0.01", "--H0",
        "1.0161843132930302", "--H0p", "1.6500699589654386",
    ]);
    let out = heun(&args);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["resolutions"], serde_json::json!([100, 199, 397]));
    let order = v["observed_order"].as_f64().unwrap();
    assert!((1.7..=2.3).contains(&order), "order {order}");
    let errs = v["errors"].as_array().unwrap();
    assert!(errs[1].as_f64().unwrap() < errs[0].as_f64().unwrap());
}

#[test]
fn convergence_zero_error_family_reports_null_order() {
    // the zero solution is represented exactly at every resolution, so the
    // observed order is reported as not-applicable
    let mut args = vec!["convergence"];
    args.extend_from_slice(CONST_PARAMS);
    args.extend_from_slice(&[
        "--from", "0.1", "--to", "0.9", "--n1", "1", "--n2", "100", "--z0", "0.1", "--H0", "0",
        "--H0p", "0",
    ]);
    let out = heun(&args);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["observed_order"].is_null());
    assert!(v["errors"][0].as_f64().unwrap() < 1e-12);
}

#[test]
fn bench_report_shape_and_error_bound() {
    let mut args = vec!["bench"];
    args.extend_from_slice(TABLE1_PARAMS);
    args.extend_from_slice(&[
        "--from", "-2.2", "--to", "0.8", "--points", "1000", "--repeats", "3",
    ]);
    let out = heun(&args);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entry = &v["results"][0];
    assert_eq!(entry["points"], 1000);
    assert!(entry["wall_seconds_median"].as_f64().unwrap() > 0.0);
    assert!(
        entry["wall_seconds_min"].as_f64().unwrap()
            <= entry["wall_seconds_median"].as_f64().unwrap()
    );
    assert!(entry["max_error_vs_refined"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn determinism_byte_identical_outputs() {
    let a = eval_const(&[]);
    let b = eval_const(&[]);
    assert_eq!(a.stdout, b.stdout);

    let mut args = vec!["eval-regular"];
    args.extend_from_slice(TABLE1_PARAMS);
    args.extend_from_slice(&["--from", "-1.0", "--to", "0.8", "--n1", "4", "--n2", "60"]);
    let c = heun(&args);
    let d = heun(&args);
    assert!(c.status.success());
    assert_eq!(c.stdout, d.stdout);
}
