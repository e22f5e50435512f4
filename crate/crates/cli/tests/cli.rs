//! End-to-end runs of the binary: parsing, exit codes, stable JSON.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_apackets"))
}

#[test]
fn mstar_lists_six_terms() {
    let out = bin().args(["mstar", "--delta", "0,1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim().lines().count(), 6, "{text}");
}

#[test]
fn packet_reduces_to_the_chain() {
    let out = bin()
        .args(["packet", "--blocks", "(6,1)+,(1,2)-", "--alpha", "5/2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("delta([5/2];sigma)"), "{text}");
}

#[test]
fn json_reports_are_stable_and_reparse() {
    let run = || {
        let out = bin()
            .args(["--format", "json", "packet", "--blocks", "(6,1)+,(1,2)-", "--alpha", "5/2"])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "reports must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["command"], "packet");
    assert!(v["results"]["trace"]["steps"].is_array());
}

#[test]
fn bad_configuration_exits_two() {
    let out = bin().args(["mstar", "--delta", "0,1", "--alpha", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["mstar", "--delta", "0,7/2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "mixed lattice endpoints are rejected");
}

#[test]
fn verify_all_passes_small_grid() {
    for alpha in ["0", "1/2", "1", "3/2", "2"] {
        let out = bin().args(["verify-all", "--grid", "2", "--alpha", alpha]).output().unwrap();
        assert!(out.status.success(), "alpha {alpha}");
    }
}

#[test]
fn config_file_roundtrip() {
    let dir = std::env::temp_dir().join("apackets-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(
        &path,
        r#"{
  "lines": [{"name": "rho", "alpha": "5/2"}],
  "base": [
    {"line": "rho", "a": 2, "b": 1, "eps": -1},
    {"line": "rho", "a": 4, "b": 1, "eps": 1}
  ]
}"#,
    )
    .unwrap();
    let out = bin()
        .args(["--config", path.to_str().unwrap(), "packet", "--blocks", "(6,1)+,(1,2)-"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
