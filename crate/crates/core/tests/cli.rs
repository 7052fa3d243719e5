use std::process::{Command, Output};

fn repind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repind")).args(args).output().expect("binary runs")
}

#[test]
fn check_all_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = repind(&["check", "all", "--seed", "42", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["failed"], 0);
    for r in v["reports"].as_array().unwrap() {
        for key in ["case", "residual", "tolerance", "pass"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn injected_fault_fails() {
    let out = repind(&["check", "all", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["failed"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(repind(&["check", "everything"]).status.code(), Some(2));
    assert_eq!(repind(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(repind(&["spectrum", "--n-max", "0"]).status.code(), Some(2));
    assert_eq!(repind(&["state", "--dim", "3", "--n", "2", "--sector", "-1"]).status.code(), Some(2));
}

#[test]
fn spectrum_and_state() {
    let out = repind(&["spectrum", "--dim", "3", "--n-max", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\n1,0,0,-1/2,1\n2,0,1,-1/8,2\n"));

    let out = repind(&["state", "--dim", "2", "--n", "2", "--sector", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["chain"]["b_coeffs"], serde_json::json!(["-2/1", "2/1"]));
    assert!(v["checks"].as_object().unwrap().values().all(|x| x == true));
}

#[test]
fn wavefunction_and_commutator() {
    let out = repind(&["wavefunction", "--dim", "2", "--n", "1", "--sector", "0", "--grid", "0:2:5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().nth(2).unwrap();
    let re: f64 = first.split(',').nth(2).unwrap().parse().unwrap();
    assert!((re - 4.0 / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-14);

    let out = repind(&["commutator", "theta_momentum_phi_momentum_comm"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("residual: 0"));
    assert_eq!(repind(&["commutator", "--list"]).status.code(), Some(0));
}
