use std::process::{Command, Output};

use landau::radii::RadiusResult;
use serde_json::Value;

fn landau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_landau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn radii_json() {
    let out = landau(&[
        "radii",
        "--theorem",
        "t31",
        "--M",
        "2",
        "--alpha",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with(r#"{"theorem":"T31","M":2,"alpha":2,"r":0.154483,"sigma":0.0845349"#),
        "{text}"
    );

    let v: Value = serde_json::from_str(&text).unwrap();
    let res: RadiusResult = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(res.r, 0.154483);
    assert_eq!(res.sigma, 0.0845349);
    assert!(!res.degenerate);
    // reparsed values print back identically
    assert_eq!(serde_json::to_string(&v).unwrap(), text.trim_end());
}

#[test]
fn radii_below_floor_is_invalid() {
    let out = landau(&["radii", "--theorem", "t31", "--M", "1.2", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn argument_errors() {
    assert_eq!(
        landau(&["radii", "--theorem", "t99", "--M", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        landau(&["radii", "--theorem", "t31", "--M", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        landau(&["radii", "--theorem", "c34", "--M", "2", "--alpha", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(landau(&["tables", "--which", "5"]).status.code(), Some(1));
    assert_eq!(landau(&["bogus"]).status.code(), Some(1));
    assert_eq!(landau(&["--help"]).status.code(), Some(0));
    assert_eq!(landau(&["--version"]).status.code(), Some(0));
}

#[test]
fn tables_csv() {
    let out = landau(&["tables", "--which", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "M,alpha,r,sigma,paper_r,paper_sigma,delta_r,delta_sigma"
    );
    assert_eq!(lines.len(), 9);
    assert!(lines[2].starts_with("2,2,0.154483,0.0845349,0.155,0.0846,"));
}

#[test]
fn tables_json_has_all_rows() {
    let out = landau(&["tables", "--which", "4"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["paper_r"], 0.3817);
    assert_eq!(rows[0]["flagged"], true);
}

#[test]
fn closed_form_alpha_is_implied() {
    let out = landau(&["radii", "--theorem", "c35", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["alpha"], 3);
    assert_eq!(v["theorem"], "C35");
    assert_eq!(v["root"], Value::Null);
}

#[test]
fn degenerate_case() {
    let out = landau(&[
        "radii",
        "--theorem",
        "t33",
        "--M",
        "1",
        "--alpha",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "theorem,M,alpha,r,sigma,degenerate\nT33,1,3,1,1,true\n"
    );
}

#[test]
fn log_disk() {
    let out = landau(&["log", "--theorem", "t41", "--M", "2", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["theorem", "M", "alpha", "r", "sigma", "w", "mu"]);
    assert!((v["w"].as_f64().unwrap() - 1.00358).abs() < 1e-5);

    let out = landau(&[
        "log",
        "--theorem",
        "t43",
        "--M",
        "1",
        "--alpha",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&out).lines().nth(1),
        Some("T43,1,3,1,1,1.54308,1.1752")
    );
}

#[test]
fn verify_suite_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.csv");
    let out = landau(&[
        "verify",
        "--suite",
        "oracle",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,margin,samples,seed,passed"));
    assert!(lines.next().unwrap().starts_with("root_oracle,"));
}

#[test]
fn verify_is_deterministic() {
    let a = landau(&["verify", "--suite", "coeff", "--seed", "7"]);
    let b = landau(&["verify", "--suite", "coeff", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["passed"] == true && r["seed"] == 7));
}

#[test]
fn root_below_search_interval_is_a_domain_failure() {
    // psi is already negative at the left end of the scan
    let out = landau(&["radii", "--theorem", "t36", "--M", "1e13", "--alpha", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no sign change"));
}
