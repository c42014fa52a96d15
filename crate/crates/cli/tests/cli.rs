use std::process::{Command, Output};

use serde_json::Value;

fn qlandau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlandau"))
        .args(args)
        .env_remove("QLANDAU_THREADS")
        .output()
        .expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn record<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("no {name}"))
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "bogus"][..],
        &["spectrum"],
        &["spectrum", "--factor2d"],
        &["spectrum", "--nu", "1,0,0", "--N", "4"],
        &["spectrum", "--nu", "1,0"],
        &["canonicalize"],
        &["canonicalize", "--nu", "1,2,2", "--format", "csv"],
        &["spectrum", "--factor2d", "--mu", "-1"],
    ] {
        let out = qlandau(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    // the message names the field
    let out = qlandau(&["spectrum", "--nu", "1,0,0", "--N", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("N:"));
}

#[test]
fn io_errors_exit_3() {
    let out = qlandau(&["verify", "algebra", "--config", "/definitely/not/here.conf"]);
    assert_eq!(out.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("report.json");
    let out = qlandau(&["verify", "algebra", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_report_shape() {
    let out = qlandau(&["verify", "heisenberg", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["tool"], "qlandau");
    assert_eq!(r["overall"], "pass");
    assert_eq!(r["config"]["seed"], 7);
    assert_eq!(r["config"]["suite"], "heisenberg");
    let table = record(&r, "heisenberg.bracket-table");
    assert_eq!(table["detail"].as_array().unwrap().len(), 21);
    for rec in r["records"].as_array().unwrap() {
        for key in ["name", "status", "residual", "tolerance"] {
            assert!(rec.get(key).is_some());
        }
    }
}

#[test]
fn weyl_suite_reports_the_transform_identity_for_the_given_field() {
    let out = qlandau(&["verify", "weyl", "--nu", "1,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rec = record(&r, "weyl.transform-identity");
    assert_eq!(rec["status"], "pass");
    assert_eq!(rec["residual"], 0.0);
    assert_eq!(rec["detail"]["nu"], serde_json::json!(["1", "2", "2"]));
}

#[test]
fn report_goes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = qlandau(&["verify", "algebra", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["overall"], "pass");
}

#[test]
fn canonicalize_branches() {
    let r = json(&qlandau(&["canonicalize", "--nu", "5,0,0"]));
    assert_eq!(r["results"]["branch"], "identity");
    assert_eq!(r["results"]["conjugation_residual"], 0.0);
    let r = json(&qlandau(&["canonicalize", "--nu", "0,0,0"]));
    assert_eq!(r["results"]["branch"], "degenerate-zero");
    let rows = r["results"]["rotation"].as_array().unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(v.as_f64().unwrap(), if i == j { 1.0 } else { 0.0 });
        }
    }
    let out = qlandau(&["canonicalize", "--nu", "1,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["branch"], "generic");
    assert!(r["results"]["conjugation_residual"].as_f64().unwrap() <= 1e-10);
    let r = json(&qlandau(&["canonicalize", "--nu", "-3,0,0"]));
    assert_eq!(r["results"]["branch"], "flip");
}

#[test]
fn free_laplacian_matches_sine_modes() {
    let out = qlandau(&["spectrum", "--nu", "0,0,0", "--N", "8", "--L", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let h: f64 = 6.0 / 9.0;
    let want = 4.0 * 4.0 / (h * h) * (std::f64::consts::PI / 18.0).sin().powi(2);
    let got = r["results"]["eigenvalues"][0].as_f64().unwrap();
    assert!((got - want).abs() <= 1e-10 * want, "{got} vs {want}");
    assert_eq!(record(&r, "spectrum.dirichlet-closed-form")["status"], "pass");
    assert_eq!(r["results"]["grid"]["points"], 8);
}

#[test]
fn planar_factor_csv() {
    let out = qlandau(&[
        "spectrum",
        "--factor2d",
        "--mu",
        "1",
        "--L",
        "8",
        "--N",
        "96",
        "--k",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,eigenvalue,residual");
    assert_eq!(lines.len(), 7);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "0");
    let lowest: f64 = first[1].parse().unwrap();
    assert!((lowest - 2.0).abs() <= 0.04, "{lowest}");
    // 17 significant digits
    let mantissa = first[1].split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17);
}

#[test]
fn fock_comparison_in_four_dimensions() {
    let out = qlandau(&[
        "spectrum",
        "--nu",
        "1,0,0",
        "--N",
        "10",
        "--k",
        "1",
        "--compare-fock",
        "--compare-tol",
        "0.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rec = record(&r, "spectrum.compare-fock");
    assert_eq!(rec["status"], "pass");
    assert_eq!(rec["detail"]["pairs"][0]["right"], 4.0);
    // a tight tolerance on a coarse grid is a check failure, not an error
    let out = qlandau(&[
        "spectrum",
        "--nu",
        "1,0,0",
        "--N",
        "8",
        "--k",
        "1",
        "--compare-fock",
        "--compare-tol",
        "1e-6",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["overall"], "fail");
}

#[test]
fn non_convergence_exits_4_with_partial_report() {
    let out = qlandau(&["spectrum", "--nu", "1,0,0", "--N", "8", "--k", "2", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(4));
    let r = json(&out);
    assert_eq!(r["results"]["converged"], false);
    assert_eq!(r["results"]["grid"]["points"], 8);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# defaults\nnu = 0,0,0\nN = 8\nL = 3\nk = 2\nseed = 9\n").unwrap();
    let p = path.to_str().unwrap();
    let r = json(&qlandau(&["spectrum", "--config", p]));
    assert_eq!(r["config"]["N"], 8);
    assert_eq!(r["config"]["seed"], 9);
    assert_eq!(r["results"]["eigenvalues"].as_array().unwrap().len(), 2);
    let r = json(&qlandau(&["spectrum", "--config", p, "--k", "1", "--seed", "3"]));
    assert_eq!(r["config"]["k"], 1);
    assert_eq!(r["config"]["seed"], 3);
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(qlandau(&["verify", "algebra", "--config", p]).status.code(), Some(2));
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qlandau"))
        .args(["verify", "algebra"])
        .env("QLANDAU_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["threads"], 3);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(qlandau(&["--help"]).status.code(), Some(0));
    assert_eq!(qlandau(&["--version"]).status.code(), Some(0));
}

#[test]
fn in_process_run_matches_exit_codes() {
    assert_eq!(
        qlandau_cli::run(["qlandau", "verify", "bogus"]),
        qlandau_cli::EXIT_USAGE
    );
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    assert_eq!(
        qlandau_cli::run(["qlandau", "verify", "algebra", "--out", out.to_str().unwrap()]),
        qlandau_cli::EXIT_PASS
    );
}
