//! The `li` binary end to end.

use std::process::{Command, Output};

fn li(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_li"))
        .args(args)
        .env("LI_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeros_upto_100() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["zeros", "--upto", "100"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# zeros_v1 T=100 count=29"));
    assert_eq!(lines.count(), 29);
    assert!(dir.path().join("zeros_v1.csv").exists());
    // second run is served from the cache and is byte-identical
    let again = li(&["zeros", "--upto", "100"], dir.path());
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn eta_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["eta", "--max-k", "8"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,eta,err_est");
    assert_eq!(lines.len(), 10);
    let eta0: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((eta0 + 0.5772156649).abs() < 1e-10);
}

#[test]
fn eta_cross_check_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["eta", "--max-k", "2", "--cross-check"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let diff: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(diff < 3e-3);
    }
}

#[test]
fn li_arith_n1() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["li", "--n", "1", "--method", "arith"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let v: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((v - 0.0230957).abs() < 1e-6);
    let j = li(&["li", "--n", "1", "--method", "arith", "--json"], dir.path());
    let json: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert!((json["arithmetic"]["value"].as_f64().unwrap() - 0.0230957).abs() < 1e-6);
}

#[test]
fn eval_grid_shape() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["eval", "--fn", "Gn", "--n", "2", "--grid", "0:50:0.1"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 501);
    assert!(text.lines().all(|l| l.split_whitespace().count() == 3));
    let csv = li(&["eval", "--fn", "Theta", "--grid", "0:1:0.5", "--csv"], dir.path());
    let text = stdout(&csv);
    assert_eq!(text.lines().next().unwrap(), "x,re,im");
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn eval_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["eval", "--fn", "Hn", "--n", "3", "--grid", "-5:5:0.5", "--sigma", "2", "--csv"];
    assert_eq!(li(&args, dir.path()).stdout, li(&args, dir.path()).stdout);
}

#[test]
fn eval_basis_and_zero_sum() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["eval", "--fn", "Fgamma", "--k", "1", "--T", "60", "--grid", "14:15:0.5", "--csv"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = li(&["eval", "--fn", "Mn", "--n", "2", "--T", "60", "--sigma", "2", "--grid", "0:3:1"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn verify_small_span_is_fit_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["verify", "--n", "1", "--span", "10"], dir.path());
    assert_eq!(o.status.code(), Some(6));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("window"), "{err}");
}

#[test]
fn verify_batch_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["verify", "--n", "1..2", "--T", "300", "--span", "250"], dir.path());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = json.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["schema"], "li-report-v1");
    let all_pass = arr
        .iter()
        .flat_map(|r| r["verdicts"].as_array().unwrap())
        .all(|v| v["pass"].as_bool().unwrap());
    assert_eq!(o.status.success(), all_pass);
}

#[test]
fn norm_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["norm", "--n", "1", "--span", "250"], dir.path());
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lambda = json["lambda"].as_f64().unwrap();
    assert!((lambda / 0.0230957 - 1.0).abs() < 0.03);
}

#[test]
fn bad_arguments_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(li(&["li", "--n", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(li(&["eval", "--fn", "Gn", "--grid", "1:0:1"], dir.path()).status.code(), Some(2));
    assert_eq!(li(&["eta", "--max-k", "21"], dir.path()).status.code(), Some(2));
    assert_eq!(li(&["zeros", "--upto", "5"], dir.path()).status.code(), Some(2));
}

#[test]
fn help_documents_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = li(&["--help"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("Exit codes"));
}
