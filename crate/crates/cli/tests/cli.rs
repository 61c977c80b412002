use std::path::Path;
use std::process::{Command, Output};

fn zetaflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetaflow"))
        .args(args)
        .env_remove("ZETAFLOW_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fields(line: &str) -> Vec<f64> {
    line.split_whitespace().map(|w| w.parse().unwrap()).collect()
}

#[test]
fn eval_zeta_two() {
    let out = zetaflow(&["eval", "--s", "2+0i", "--alpha", "1"]);
    assert!(out.status.success());
    let v = fields(stdout(&out).trim());
    assert!((v[0] - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    assert_eq!(v[1], 0.0);
    assert!(v[2] <= 1e-12);

    let out = zetaflow(&["eval", "--s", "2+0i", "--alpha", "0.5"]);
    let v = fields(stdout(&out).trim());
    assert!((v[0] - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
}

#[test]
fn eval_derivative_in_s() {
    // ζ'(0) = −ln(2π)/2
    let out = zetaflow(&["eval", "--s", "0+0i", "--alpha", "1", "--deriv", "s"]);
    assert!(out.status.success());
    let v = fields(stdout(&out).trim());
    assert!((v[0] + (2.0 * std::f64::consts::PI).ln() / 2.0).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let pole = zetaflow(&["eval", "--s", "1+0i", "--alpha", "1"]);
    assert_eq!(pole.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("PoleAtOne"));

    assert_eq!(zetaflow(&["eval", "--s", "2 + 0i", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(zetaflow(&["eval", "--s", "2+0i", "--alpha", "0"]).status.code(), Some(2));
    assert_eq!(zetaflow(&["scan", "--rect", "1,1,0,30", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(zetaflow(&["nullspace", "--p", "9"]).status.code(), Some(2));
    assert_eq!(zetaflow(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(zetaflow(&["--tol", "2", "eval", "--s", "2+0i", "--alpha", "1"]).status.code(), Some(2));
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_zetaflow"))
        .args(["eval", "--s", "2+0i", "--alpha", "1"])
        .env("ZETAFLOW_TOL", "nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_zetaflow"))
        .args(["eval", "--s", "2+0i", "--alpha", "1"])
        .env("ZETAFLOW_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn scan_lists_three_zeros() {
    let out = zetaflow(&["scan", "--rect", "-1,2,0,30", "--alpha", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("3 3"));
    let rows: Vec<&str> = lines.filter(|l| !l.is_empty()).collect();
    assert_eq!(rows.len(), 4, "header plus three rows: {rows:?}");
    let t: Vec<f64> = rows[1..].iter().map(|r| r.split(',').nth(1).unwrap().parse().unwrap()).collect();
    for (got, want) in t.iter().zip([14.134725141734693, 21.022039638771555, 25.01085758014569]) {
        assert!((got - want).abs() < 1e-9);
    }
}

#[test]
fn count_reports_riemann_zeros() {
    let out = zetaflow(&["count", "--alpha", "1", "--tmax", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "actual 10"), "{text}");
    assert_eq!(zetaflow(&["count", "--alpha", "1", "--tmax", "600"]).status.code(), Some(2));
}

#[test]
fn count_sweep_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = zetaflow(&["count", "--alpha", "1", "--tmax", "40", "--sweep", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "T,predicted,actual,deviation");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("20,") && lines[2].split(',').nth(2) == Some("1"));
}

#[test]
fn nullspace_for_seven_and_thirteen() {
    let out = zetaflow(&["nullspace", "--p", "7", "--basis"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(first, ["7", "3", "2", "1", "-1"]);
    assert!(text.contains("x1 "));

    let out = zetaflow(&["nullspace", "--p", "13"]);
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row[3], "3");
}

#[test]
fn family_spec_round_trip_through_eval() {
    // 2^(−s) (ζ(s, 1/2) + ζ(s, 1)) = ζ(s)
    let doc = r#"{"modulus": 2, "prefactor": true,
        "terms": [{"l": 1, "c_re": 1.0, "c_im": 0.0}, {"l": 2, "c_re": 1.0, "c_im": 0.0}],
        "family": {"tag": "Generic", "params": {}}}"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.json");
    std::fs::write(&path, doc).unwrap();
    let out = zetaflow(&["eval", "--s", "3+0i", "--family-spec", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = fields(stdout(&out).trim());
    assert!((v[0] - 1.2020569031595942).abs() < 1e-12);

    std::fs::write(&path, "{\"modulus\": 2}").unwrap();
    let out = zetaflow(&["eval", "--s", "3+0i", "--family-spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn track_writes_trajectories_and_events() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("traj.csv");
    let out = zetaflow(&[
        "track", "--family", "hurwitz", "--zeros", "1..2", "--to", "0.9", "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(csv.lines().next(), Some("zero_id,param,sigma,t,residual,scaled_t,event_flag"));
    let ids: std::collections::BTreeSet<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids.into_iter().collect::<Vec<_>>(), ["1", "2"]);
    let events = Path::new(&out_path).with_extension("events.json");
    let parsed: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(events).unwrap()).unwrap();
    assert!(parsed.is_array());
}
