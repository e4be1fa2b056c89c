use std::process::{Command, Output};

use serde_json::Value;

const GF64: &str = "gf(2,1,6,[1,1,0,0,0,0,1])";
const GF16: &str = "gf(2,1,4,[1,1,0,0,1])";
const V63: &str = "exp:1,8,12,26,27,32,35";

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-codes")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn orbit_reports_code_parameters() {
    let v = json(&cli(&["orbit", "--field", GF64, "--subspace", V63, "--verify", "--list"]));
    assert_eq!(v["parameters"], serde_json::json!({"n": 6, "M": 63, "d": 4, "k": 3}));
    assert_eq!(v["verified"], true);
    assert_eq!(v["codewords"].as_array().unwrap().len(), 63);
    assert_eq!(v["initial"]["exponents"], serde_json::json!([1, 8, 12, 26, 27, 32, 35]));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["partition", "--field", GF64, "--subspace", V63, "--subgroup-order", "7", "--list"];
    let a = cli(&args);
    let b = cli(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        serde_json::json!({
            "command": "partition",
            "field": GF64,
            "subspace": V63,
            "subgroup-order": 7,
            "list": true,
            "output": out,
        })
        .to_string(),
    )
    .unwrap();
    assert!(cli(&["run", cfg.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn malformed_descriptor_is_a_config_error() {
    for bad in ["gf(2,1,6,[1,1,0,0,0,0])", "gf(2,1,6)", "gf(4,1,2,[1,1,1])", "GF64"] {
        let out = cli(&["field", "--field", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn config_files_reject_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, format!(r#"{{"command":"field","field":"{GF16}","colour":"red"}}"#)).unwrap();
    let out = cli(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
    std::fs::write(&cfg, format!(r#"{{"field":"{GF16}"}}"#)).unwrap();
    assert_eq!(cli(&["run", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn missing_or_conflicting_options_exit_two() {
    assert_eq!(cli(&["orbit", "--field", GF64]).status.code(), Some(2));
    assert_eq!(cli(&["partition", "--field", GF64, "--subspace", V63]).status.code(), Some(2));
    assert_eq!(cli(&["field", "--field", GF16, "--format", "csv"]).status.code(), Some(2));
    assert_eq!(cli(&["orbit", "--field", GF64, "--subspace", "exp:1,2", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["partition", "--field", GF64, "--subspace", V63, "--subgroup-order", "5"]).status.code(), Some(2));
}

#[test]
fn field_lists_powers() {
    let v = json(&cli(&["field", "--field", GF16]));
    assert_eq!(v["order"], 16);
    let powers = v["powers"].as_array().unwrap();
    assert_eq!(powers.len(), 15);
    // α^4 = 1 + α for x^4 + x + 1
    assert_eq!(powers[4], serde_json::json!([1, 1, 0, 0]));
}

#[test]
fn fast_mindist_agrees_with_exhaustive() {
    let v = json(&cli(&["fast-mindist", "--field", GF64, "--subspace", V63, "--subgroup-order", "7", "--verify", "--threads", "2"]));
    assert_eq!(v["verified"], true);
    assert_eq!(v["result"]["computations"], 28);
    assert_eq!(v["result"]["min_distance"], 4);
}

#[test]
fn csv_tables() {
    let out = cli(&["partition", "--field", GF64, "--subspace", V63, "--subgroup-order", "7", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("representative,distance,count"));
    let total: usize = lines.map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 9 * 49);

    let out = cli(&["spread", "--field", GF64, "--r", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "distance,count\n6,8\n");
}

#[test]
fn ternary_unipotent_construction() {
    let v = json(&cli(&[
        "abelian-construct", "--q", "3", "--r", "3", "--gabidulin", "2", "--layout", "0,0,0;0,0,0;0,0,0", "--special", "--verify",
    ]));
    assert_eq!(v["parameters"], serde_json::json!({"n": 6, "M": 729, "d": 4, "k": 3}));
    assert_eq!(v["verified"], true);
    assert_eq!(v["cardinality"]["abelian"], 729);
}

#[test]
fn multishot_validity_sets_exit_code() {
    let base = ["multishot", "--field", GF16, "--alphabet", "orbit", "--subspace", "exp:0,1", "--series", "15,5,1", "--distance", "4", "--m", "3"];
    let mut good: Vec<&str> = base.to_vec();
    good.extend(["--component", "full", "--component", "repetition", "--component", "repetition", "--verify"]);
    let v = json(&cli(&good));
    assert_eq!(v["validation"]["valid"], true);
    assert_eq!(v["code"]["size"], 15);
    assert!(v["code"]["min_extended_distance"].as_u64().unwrap() >= 4);

    let mut bad: Vec<&str> = base.to_vec();
    bad.extend(["--component", "full", "--component", "full", "--component", "full"]);
    let out = cli(&bad);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["validation"]["valid"], false);
}

#[test]
fn reproduce_selected_criteria() {
    let out = cli(&["reproduce-paper", "--criterion", "1,10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    assert!(text.ends_with("2/2 criteria passed\n"));
    assert_eq!(cli(&["reproduce-paper", "--criterion", "99"]).status.code(), Some(2));
}
