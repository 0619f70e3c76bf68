use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const EX_S0: &str = r#"{"p":2,"k":1,"d":1,"memory":[[-1],[0]],
  "default_rule":{"[-1]":[[1]],"[0]":[[1]]},
  "left_rule":{"[-1]":[[0]],"[0]":[[1]]},"left_boundary":0}"#;

const SHIFT: &str = r#"{"p":2,"k":1,"d":1,"memory":[[-1]],"default_rule":{"[-1]":[[1]]}}"#;

const XOR: &str = r#"{"p":2,"k":1,"d":1,"memory":[[-1],[0]],"default_rule":{"[-1]":[[1]],"[0]":[[1]]}}"#;

const PLANE_XOR: &str = r#"{"p":2,"k":1,"d":2,"memory":[[0,0],[1,0],[0,1]],
  "default_rule":{"[0,0]":[[1]],"[1,0]":[[1]],"[0,1]":[[1]]}}"#;

fn nucalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucalab"))
        .args(args)
        .env_remove("NUCALAB_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes_follow_status() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "s0.json", EX_S0);
    let cases = [
        ("surjective", 0),
        ("pre-injective", 0),
        ("post-surjective", 1),
        ("stable-injective", 1),
        ("injective", 2),
    ];
    for (property, want) in cases {
        let out = nucalab(&["check", s(&rule), "--property", property]);
        assert_eq!(code(&out), want, "{property}: {}", stdout(&out));
    }
}

#[test]
fn check_json_is_a_report_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "s0.json", EX_S0);
    let out = nucalab(&["check", s(&rule), "--property", "post-surjective", "--json"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.ends_with('\n'));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rule_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["verdicts"][0]["subject"], "rule");
    assert_eq!(v["verdicts"][0]["status"], "fails");
    assert!(v["command"].as_array().unwrap().iter().any(|a| a == "check"));

    let report = write(dir.path(), "report.json", &text);
    let out = nucalab(&["verify-cert", s(&report)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn verify_cert_rejects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "s0.json", EX_S0);
    let out = nucalab(&["check", s(&rule), "--property", "stable-injective", "--json"]);
    let mut v: Value = serde_json::from_str(&stdout(&out)).unwrap();

    let mut flipped = v.clone();
    flipped["verdicts"][0]["status"] = "holds".into();
    let p = write(dir.path(), "flipped.json", &flipped.to_string());
    assert_ne!(code(&nucalab(&["verify-cert", s(&p)])), 0);

    v["rule"]["left_boundary"] = 1.into();
    let p = write(dir.path(), "moved.json", &v.to_string());
    assert_eq!(code(&nucalab(&["verify-cert", s(&p)])), 1);
}

#[test]
fn repro_report_verifies_claim_by_claim() {
    let dir = tempfile::tempdir().unwrap();
    let out = nucalab(&["repro-paper", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 9);
    assert_eq!(v["details"]["status"], "all-confirmed");
    let p = write(dir.path(), "repro.json", &stdout(&out));
    let out = nucalab(&["verify-cert", s(&p)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("accepted")).count(), 9);
}

#[test]
fn repro_with_small_bound_is_inconclusive() {
    assert_eq!(code(&nucalab(&["repro-paper", "--bound", "2"])), 2);
}

#[test]
fn repro_rejects_corrupted_rule_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"p":2,"k":1,"d":1,"memory":[[0]],"default_rule":{"[0]":[[2]]}}"#);
    assert_eq!(code(&nucalab(&["repro-paper", "--rule", s(&bad)])), 64);
    let truncated = write(dir.path(), "cut.json", &EX_S0[..40]);
    assert_eq!(code(&nucalab(&["repro-paper", "--rule", s(&truncated)])), 64);
}

#[test]
fn dual_is_an_involution_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "s0.json", EX_S0);
    let once = dir.path().join("dual.json");
    assert_eq!(code(&nucalab(&["dual", s(&rule), "-o", s(&once)])), 0);
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&once).unwrap()).unwrap();
    assert_eq!(d["left_boundary"], -1);
    let twice = nucalab(&["dual", s(&once)]);
    assert_eq!(code(&twice), 0);
    let back: Value = serde_json::from_str(&stdout(&twice)).unwrap();
    let orig: Value = serde_json::from_str(EX_S0).unwrap();
    for key in ["memory", "default_rule", "left_rule", "left_boundary"] {
        assert_eq!(back[key], orig[key], "{key}");
    }
}

#[test]
fn invert_finds_shift_inverse_and_misses_xor() {
    let dir = tempfile::tempdir().unwrap();
    let shift = write(dir.path(), "shift.json", SHIFT);
    let out = nucalab(&["invert", s(&shift), "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["details"]["left_inverse"]["memory"], serde_json::json!([[1]]));
    let xor = write(dir.path(), "xor.json", XOR);
    assert_eq!(code(&nucalab(&["invert", s(&xor)])), 2);
}

#[test]
fn shadow_succeeds_and_rejects_bad_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "xor.json", XOR);
    let out = nucalab(&["shadow", s(&rule), "--epsilon", "2^-2", "--horizon", "6", "--json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["details"]["shadow"]["verified"], true);
    let out = nucalab(&["shadow", s(&rule), "--epsilon", "0.3"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn seeded_random_shadowing_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "s0.json", EX_S0);
    let run = |seed: &str| {
        let out = nucalab(&["--seed", seed, "shadow", s(&rule), "--perturb", "random", "--horizon", "4", "--json"]);
        assert_eq!(code(&out), 0);
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        v["details"]["shadow"]["point"].clone()
    };
    assert_eq!(run("7"), run("7"));
}

#[test]
fn plane_rules_only_get_window_checks() {
    let dir = tempfile::tempdir().unwrap();
    let rule = write(dir.path(), "plane.json", PLANE_XOR);
    let out = nucalab(&["check", s(&rule), "--property", "surjective", "--bound", "2"]);
    assert!(matches!(code(&out), 0 | 2), "{}", stdout(&out));
    let out = nucalab(&["check", s(&rule), "--property", "injective"]);
    assert_eq!(code(&out), 65);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&nucalab(&["check"])), 64);
    assert_eq!(code(&nucalab(&["frobnicate"])), 64);
    assert_eq!(code(&nucalab(&["check", "/nonexistent.json", "--property", "injective"])), 64);
    assert_eq!(code(&nucalab(&["--help"])), 0);
}
