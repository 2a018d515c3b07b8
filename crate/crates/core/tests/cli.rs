use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mvmeasure"));
    c.env_remove("MVMEASURE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const PAIR: &str = r#"{
  "space": ["a", "b", "c"],
  "dimension": 1,
  "multimeasures": {
    "M": { "atoms": [ {"interval": [0, 2]}, {"interval": [0, 5]}, {"interval": [0, 0]} ] },
    "N": { "atoms": [ {"interval": [0, 1]}, {"interval": [0, 1]}, {"interval": [0, 3]} ] }
  },
  "functions": { "f": [2, -3, 1] }
}"#;

#[test]
fn derive_reports_ratio_and_digest() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "pair.json", PAIR);
    let out = run(&["derive", "--scenario", p.to_str().unwrap(), "--audit"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["tool"], "mvmeasure");
    assert_eq!(v["result"]["certificate"]["theta"]["values"], serde_json::json!([2.0, 5.0, 0.0]));
    assert_eq!(v["inputs_digest"], hex::encode(Sha256::digest(PAIR.as_bytes())));
    assert_eq!(v["result"]["audit"]["positivity"]["ok"], true);
}

#[test]
fn integrate_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "pair.json", PAIR);
    let out = run(&["integrate", "--scenario", p.to_str().unwrap(), "--function", "f", "--event", "a,b", "--aumann"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    // f⁺ on a gives [0, 2], f⁻ on b gives -[0, 3]
    assert_eq!(v["result"]["body"]["interval"], serde_json::json!([-3.0, 2.0]));
    assert_eq!(v["result"]["aumann"]["distance"], 0.0);
}

#[test]
fn negative_results_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "swap.json",
        &PAIR.replace(r#"{"interval": [0, 0]} ] }"#, r#"{"interval": [0, 1]} ] }"#).replace(
            r#""N": { "atoms": [ {"interval": [0, 1]}, {"interval": [0, 1]}, {"interval": [0, 3]} ] }"#,
            r#""N": { "atoms": [ {"interval": [0, 1]}, {"interval": [0, 1]}, {"interval": [0, 0]} ] }"#,
        ),
    );
    let s = p.to_str().unwrap();
    let out = run(&["derive", "--scenario", s]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["result"]["error"]["kind"], "not_absolutely_continuous");
    let out = run(&["check", "--scenario", s, "--condition", "usd"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["result"]["report"]["verdict"]["verdict"], "fails");
}

#[test]
fn generated_scenarios_validate() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["interval", "interval-pair", "ball-pair", "range", "random"] {
        let out = run(&["scenario", "generate", "--kind", kind, "--atoms", "4", "--seed", "9"]);
        assert_eq!(out.status.code(), Some(0), "{kind}");
        let p = write(dir.path(), &format!("{kind}.json"), std::str::from_utf8(&out.stdout).unwrap());
        let out = run(&["validate", "--scenario", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let p = dir.path().join("range.json");
    let out = run(&["derive", "--scenario", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["result"]["sub_containment"]["contained"], true);
}

#[test]
fn invalid_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"space\": [\"a\"],");
    assert_eq!(run(&["validate", "--scenario", bad.to_str().unwrap()]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.json", &PAIR.replace("\"dimension\"", "\"dimensions\""));
    assert_eq!(run(&["validate", "--scenario", unknown.to_str().unwrap()]).status.code(), Some(2));
    let p = write(dir.path(), "pair.json", PAIR);
    let out = run(&["integrate", "--scenario", p.to_str().unwrap(), "--function", "g"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "invalid");
    assert_eq!(run(&["validate"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_seed_falls_back_to_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["scenario", "generate", "--kind", "random", "--atoms", "5", "--seed", "4"]);
    let p = write(dir.path(), "r.json", std::str::from_utf8(&out.stdout).unwrap());
    let args = ["check", "--scenario", p.to_str().unwrap(), "--condition", "usac", "--directions", "24"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 4);
    let env = bin().args(args).env("MVMEASURE_SEED", "77").output().unwrap();
    assert_eq!(json(&env)["seed"], 77);
    let flag = bin().args(args).args(["--seed", "78"]).env("MVMEASURE_SEED", "77").output().unwrap();
    assert_eq!(json(&flag)["seed"], 78);
}

#[test]
fn report_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "pair.json", PAIR);
    let (report, svg) = (dir.path().join("out.json"), dir.path().join("out.svg"));
    let out = run(&[
        "validate",
        "--scenario",
        p.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["result"]["multimeasures"]["N"]["classification"], "pointless, H=Ω");
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--count", "10", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["agreements"], 10);
}
