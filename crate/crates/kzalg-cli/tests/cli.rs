use std::process::{Command, Output};

use serde_json::Value;

fn kzalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzalg")).args(args).env_remove("KZALG_OUT_DIR").output().expect("spawn kzalg")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = kzalg(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

#[test]
fn envelope_and_a1_clans() {
    let (code, v) = json(&["clans", "--theta", "1/2", "--m", "2", "--d", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["command"], "clans");
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["clans"].as_array().unwrap().len(), 3);
}

#[test]
fn orbit_count() {
    let (code, v) = json(&["orbits", "--m", "2", "--beta", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 3);
}

#[test]
fn klr_relations_and_negative_control() {
    assert_eq!(kzalg(&["klr-check", "--m", "2", "--beta", "1,1", "--degree", "6"]).status.code(), Some(0));
    assert_eq!(kzalg(&["klr-check", "--m", "2", "--beta", "2,1", "--degree", "2", "--flipped"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [&["hecke-check", "--type", "A", "--rank", "2", "--trials", "5", "--seed", "3"][..], &["orbits", "--m", "3", "--beta", "1,1,1"][..]] {
        assert_eq!(kzalg(args).stdout, kzalg(args).stdout);
    }
}

#[test]
fn seed_is_required() {
    let out = kzalg(&["hecke-check", "--type", "A", "--rank", "1", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn parse_errors_exit_2() {
    let out = kzalg(&["orbits", "--m", "2", "--beta", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entry 2"));
    assert_eq!(kzalg(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(kzalg(&["monodromy", "--lambda", "1/2"]).status.code(), Some(2));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# orbits of the 2-cycle\nm = 2\nbeta = 1,1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let (_, v) = json(&["--config", cfg, "orbits"]);
    assert_eq!(v["result"]["count"], 3);
    let (_, v) = json(&["--config", cfg, "orbits", "--beta", "2,1"]);
    assert_eq!(v["result"]["beta"], serde_json::json!([2, 1]));
}

#[test]
fn output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_kzalg"))
        .args(["roots", "--type", "A", "--rank", "2", "--format", "csv"])
        .env("KZALG_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("roots.csv")).unwrap();
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn explicit_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    let out = kzalg(&["partypes", "--m", "2", "--beta", "1,1", "--format", "text", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("partypes: ok"));
}

#[test]
fn csv_and_text_formats() {
    let csv = String::from_utf8(kzalg(&["partypes", "--m", "2", "--beta", "1,1", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("type,shift_dim"));
    assert_eq!(csv.lines().count(), 4);
    let text = String::from_utf8(kzalg(&["roots", "--type", "C", "--rank", "2", "--format", "text"]).stdout).unwrap();
    assert!(text.contains("8 roots"));
}

#[test]
fn monodromy_matches_closed_form() {
    let (code, v) = json(&["monodromy", "--lambda", "-1/4", "--path", "word", "--word", "tgt"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["similarity"]["passed"], true);
}

#[test]
fn self_tests_pass() {
    for cmd in ["roots", "clans", "spirals", "orbits", "partypes", "klr-check", "hecke-check", "monodromy"] {
        let (code, v) = json(&[cmd, "--self-test"]);
        assert_eq!(code, 0, "{cmd}: {v}");
        assert!(v["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
}
