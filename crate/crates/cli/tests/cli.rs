use std::process::{Command, Output};

fn shtuka(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shtuka")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn omega_fixed_point_passes() {
    let o = shtuka(&["verify", "omega-fixedpoint", "--q", "2", "--precision", "64"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"][0]["residual_valuation"].as_i64().unwrap() >= 64);
}

#[test]
fn ideal_lemmas_pass_for_degree_two_place() {
    let o = shtuka(&["verify", "lemma-uI", "--q", "2", "--pinf", "1,1,1", "--degree", "2", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.starts_with("ok")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&shtuka(&["verify", "no-such-suite"])), 2);
    let o = shtuka(&["compute", "omega", "--precision", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("precision must be positive"));
    assert_eq!(code(&shtuka(&["compute", "omega", "--q", "6"])), 2);
    assert_eq!(code(&shtuka(&["compute", "omega", "--q", "2", "--pinf", "1,0,1"])), 2);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "q = 3\nprecision = 8\nformat = csv\n").unwrap();
    let o = shtuka(&["compute", "pi-tilde", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());

    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(code(&shtuka(&["compute", "omega", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn ideal_table_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ideals.csv");
    let o = shtuka(&[
        "compute", "ideal-table", "--q", "2", "--pinf", "1,1,1", "--degree", "3", "--format", "csv",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("deg,class,deg_tau_phi,m,j"));
    assert_eq!(lines.count(), 22);
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "lseries-operator", "--q", "2", "--pinf", "1,1,1", "--degree", "3", "--precision", "40"];
    let a = shtuka(&args);
    let b = shtuka(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pellarin_suite_at_degree_one_place() {
    let o = shtuka(&["verify", "pellarin", "--q", "3", "--degree", "3", "--precision", "40"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
