use std::process::{Command, Output};

fn qfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfn")).args(args).output().expect("qfn runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn eval_rice_k0() {
    let o = qfn(&["eval", "rice-ie", "--k", "0", "--x", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!((v["value"].as_f64().unwrap() - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    assert_eq!(v["seed"], 0);
}

#[test]
fn eval_nuttall_poly() {
    let o = qfn(&[
        "eval", "nuttall", "--m", "0.7", "--n", "0.3", "--a", "0.6", "--b", "0.4", "--method", "poly", "--p", "20", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["method"], "poly");
    assert!((v["value"].as_f64().unwrap() - 0.6956).abs() < 5e-5);
}

#[test]
fn bounds_report_oracle() {
    let o = qfn(&["bounds", "rice-ie", "--k", "0.6", "--x", "0.4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["bracketed"], true);
    let o = qfn(&["bounds", "ilhi", "--m", "1.1", "--n", "0.8", "--a", "1.4", "--x", "1.7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("oracle"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "nuttall", "--m", "1", "--n", "0.5", "--a", "1", "--b", "1", "--bogus", "1"][..],
        &["eval", "nuttall", "--m", "0x1", "--n", "0.5", "--a", "1", "--b", "1"],
        &["eval", "nuttall", "--m", "inf", "--n", "0.5", "--a", "1", "--b", "1"],
        &["eval", "nuttall", "--m", "1", "--n", "0.5", "--a", "1"],
        &["eval", "rice-ie", "--k", "0.5", "--x", "1", "--m", "2"],
        &["eval", "rice-ie", "--k", "0.5", "--x", "1", "--method", "nope"],
        &["table", "VI"],
        &["verify", "--draws", "0"],
        &["capacity", "mimo", "--gamma-bar", "10"],
        &["outage", "--model", "eta-mu", "--eta", "0.5", "--gamma-bar", "1", "--gamma-th", "1"],
    ] {
        assert_eq!(code(&qfn(args)), 2, "{args:?}");
    }
}

#[test]
fn refusal_exits_1() {
    // the half-integer route does not apply at n = 0.3
    let o = qfn(&["eval", "nuttall", "--m", "0.7", "--n", "0.3", "--a", "0.6", "--b", "0.4", "--method", "halfint"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn sweep_is_csv_and_repeatable() {
    let args = ["sweep", "nuttall", "--m", "1.2", "--n", "1.8", "--a", "2", "--grid", "b=0:4:81"];
    let o = qfn(&args);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 82);
    assert!(lines[0].starts_with("b,kdf,"));
    assert!(!text.contains('\r'));
    assert_eq!(o.stdout, qfn(&args).stdout);
}

#[test]
fn outage_sweep_is_monotone() {
    let o =
        qfn(&["sweep", "outage", "--model", "eta-mu", "--eta", "0.5", "--mu", "1", "--gamma-bar-db", "0", "--grid", "gamma_th=0.05:10:40"]);
    assert_eq!(code(&o), 0);
    let col: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(col.len(), 40);
    assert!(col.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn single_point_grid() {
    let o = qfn(&["sweep", "rice-ie", "--k", "0.5", "--grid", "x=1:1:1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn huge_grid_refused() {
    let o = qfn(&["sweep", "rice-ie", "--grid", "k=0.1:0.9:1001", "--grid", "x=0.1:5:1000"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let args = ["table", "V", "--format", "csv"];
    let direct = qfn(&args);
    let o = qfn(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn tables_report_mismatches() {
    let o = qfn(&["table", "III"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("mismatches:"));
    assert!(stdout(&o).contains("Ie(0.6,0.4)"));
    let o = qfn(&["table", "V"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn capacity_commands() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/");
    let o = qfn(&["capacity", "siso", "--n", "1", "--gamma-bar-db", "10", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["cutoff_residual"].as_f64().unwrap() <= 1e-8);

    // a one-mode MIMO file is the SIMO channel with the same K
    let simo_file = format!("{data}simo_1x2_k1.json");
    let mimo = json(&qfn(&["capacity", "mimo", "--coeffs", &simo_file, "--gamma-bar", "5", "--gamma0", "0.5", "--format", "json"]));
    let simo = json(&qfn(&[
        "capacity",
        "simo",
        "--k-factor",
        "1",
        "--los-power",
        "1",
        "--antennas",
        "2",
        "--gamma-bar",
        "5",
        "--gamma0",
        "0.5",
        "--format",
        "json",
    ]));
    let (a, b) = (mimo["capacity_bits_per_hz"].as_f64().unwrap(), simo["capacity_bits_per_hz"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-10 * b, "{a} vs {b}");

    let o = qfn(&["capacity", "mimo", "--coeffs", &format!("{data}central_2x2.json"), "--gamma-bar", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("seed"));
}

#[test]
fn bad_coeff_file_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"m": 1, "n": 2, "t": 0, "omega": [], "c": [[1.0]], "k_norm": 1.0, "extra": 3}"#).unwrap();
    let o = qfn(&["capacity", "mimo", "--coeffs", path.to_str().unwrap(), "--gamma-bar", "10"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_smoke_and_negative_control() {
    let a = qfn(&["verify", "--draws", "1", "--seed", "42"]);
    assert_eq!(code(&a), 0);
    let v = json(&a);
    assert_eq!(v["seed"], 42);
    assert!(v["properties"].as_array().unwrap().iter().all(|p| p["worst_residual"].is_number()));
    assert_eq!(a.stdout, qfn(&["verify", "--draws", "1", "--seed", "42"]).stdout);
    assert_eq!(code(&qfn(&["verify", "--draws", "5", "--tol", "1e-15"])), 1);
}

#[test]
fn verify_full_suite() {
    let o = qfn(&["verify", "--draws", "100", "--seed", "0", "--tol", "1e-7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // known issues still fail under --strict
    assert_eq!(code(&qfn(&["verify", "--draws", "10", "--strict"])), 1);
}
