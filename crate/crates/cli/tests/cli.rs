use std::process::{Command, Output};

use serde_json::Value;

fn weylworks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylworks"))
        .args(args)
        .env_remove("WEYLWORKS_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = weylworks(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn no_arguments_is_a_usage_error() {
    let out = weylworks(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn help_carries_the_notes() {
    let out = weylworks(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("derived"));
    assert!(text.contains("[2 1]"));
    assert!(text.contains("WEYLWORKS_MAX_DIM"));
}

#[test]
fn character_of_sym3() {
    let v = json(&["character", "--lambda", "3,0", "-n", "2"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["dim"], 4);
    let weights = v["weights"].as_array().unwrap();
    assert_eq!(weights.len(), 4);
    assert!(weights.iter().all(|w| w["multiplicity"] == 1));
}

#[test]
fn character_with_negative_entries() {
    let v = json(&["character", "--lambda", "1,0,-1", "-n", "3"]);
    assert_eq!(v["dim"], 8);
    let zero = v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["mu"] == serde_json::json!([0, 0, 0]))
        .unwrap();
    assert_eq!(zero["multiplicity"], 2);
}

#[test]
fn springer_two_line_count() {
    let v = json(&["springer", "--nu", "2,1", "--mu", "1,1,1", "-n", "3", "--primes", "2,3,5"]);
    assert_eq!(v["counts"]["2"], 5);
    assert_eq!(v["counts"]["3"], 7);
    assert_eq!(v["counts"]["5"], 11);
    assert_eq!(v["leading"], 2);
    assert_eq!(v["match"], true);
}

#[test]
fn springer_exhaustive_counter_agrees() {
    let a = json(&["springer", "--nu", "2,1,1", "--mu", "2,1,1", "-n", "3", "--primes", "2,3,5,7"]);
    let b = json(&[
        "springer", "--nu", "2,1,1", "--mu", "2,1,1", "-n", "3", "--primes", "2,3,5,7", "--counter", "exhaustive",
    ]);
    assert_eq!(a["counts"], b["counts"]);
    assert_eq!(a["poly"], b["poly"]);
}

#[test]
fn composite_prime_is_rejected() {
    let out = weylworks(&["springer", "--nu", "2,1", "--mu", "1,1,1", "-n", "3", "--primes", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_counter_is_rejected() {
    let out = weylworks(&["springer", "--nu", "2,1", "--mu", "1,1,1", "-n", "3", "--counter", "magic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn crossval_agrees() {
    let v = json(&["crossval", "--lambda", "2,1,0", "-n", "3", "-m", "3"]);
    assert_eq!(v["match"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    let total: u64 = rows.iter().map(|r| r["counts"]["kostka"].as_u64().unwrap()).sum();
    assert_eq!(total, 8);
}

#[test]
fn crossval_route_subset() {
    let v = json(&["crossval", "--lambda", "2,2", "-n", "2", "-m", "2", "--routes", "kostka,lattice-mv"]);
    assert_eq!(v["routes"], serde_json::json!(["kostka", "lattice-mv"]));
    assert_eq!(v["match"], true);
}

#[test]
fn skewhowe_block_rank() {
    let v = json(&[
        "skewhowe", "--n", "3", "--m", "3", "--N", "3", "--lambda", "2,1,0", "--generator", "E1", "--from", "1,1,1",
    ]);
    let block = &v["block"];
    assert_eq!(block["rows"], 1);
    assert_eq!(block["cols"], 2);
    assert_eq!(block["rank"], 1);
}

#[test]
fn decompose_adjoint_tensor_det() {
    let v = json(&["decompose", "--module", "tensor(adj, det)", "-n", "3"]);
    assert_eq!(v["schema_version"], 1);
    let text = v.to_string();
    assert!(text.contains("[2,1,0]"), "{text}");
}

#[test]
fn tsv_output() {
    let out = weylworks(&["--format", "tsv", "character", "--lambda", "1,0", "-n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines, ["mu\tmultiplicity", "1,0\t1", "0,1\t1"]);
}

#[test]
fn output_is_reproducible() {
    let args = ["crossval", "--lambda", "2,1", "-n", "3", "-m", "2"];
    let a = weylworks(&args);
    let b = weylworks(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["lattice", "random", "-n", "3", "-D", "3", "--seed", "11"];
    assert_eq!(weylworks(&args).stdout, weylworks(&args).stdout);
}

#[test]
fn print_config_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["character", "--lambda", "1,0,-1", "-n", "3"],
        &["--format", "tsv", "character", "--lambda", "2,0", "-n", "2"],
        &["springer", "--nu", "2,1", "--mu", "1,1,1", "-n", "3", "--primes", "2,3,5"],
        &["crossval", "--lambda", "2,1", "-n", "2", "-m", "2", "--routes", "kostka,skewhowe"],
        &["skewhowe", "--n", "2", "--m", "3", "--N", "3"],
        &["lattice", "mv", "--lambda", "2,1", "--mu", "1,1,1", "-n", "3"],
        &["lattice", "random", "-n", "2", "-D", "3", "--seed", "5"],
        &["--max-dim", "5000", "irrep", "--lambda", "2,1", "-n", "3"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut with_flag = args.to_vec();
        with_flag.insert(0, "--print-config");
        let config = weylworks(&with_flag);
        assert!(config.status.success(), "{args:?}");
        let parsed: Value = serde_json::from_slice(&config.stdout).unwrap();
        assert_eq!(parsed["schema_version"], 1);

        let path = dir.path().join(format!("config{i}.json"));
        std::fs::write(&path, &config.stdout).unwrap();
        let direct = weylworks(args);
        let replayed = weylworks(&["replay", path.to_str().unwrap()]);
        assert!(replayed.status.success(), "{}", String::from_utf8_lossy(&replayed.stderr));
        assert_eq!(direct.stdout, replayed.stdout, "{args:?}");
    }
}

#[test]
fn replay_rejects_wrong_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"schema_version": 2, "command": {"subcommand": "character", "lambda": [1, 0], "n": 2}}"#,
    )
    .unwrap();
    let out = weylworks(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_subspace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub.json");
    // span of z e_1 and 1 e_1, 1 e_2 with D = 2: the fixed point of (2, 1)
    std::fs::write(
        &path,
        r#"{"n": 2, "D": 2, "basis": [["1","0","0","0"], ["0","1","0","0"], ["0","0","0","1"]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let j = json(&["lattice", "jordan", "--subspace", p]);
    assert_eq!(j["jordan_type"], serde_json::json!([2, 1]));
    let s = json(&["lattice", "stratum", "--lambda", "2,1", "--subspace", p]);
    assert_eq!(s["membership"], "in_stratum");
    let s = json(&["lattice", "stratum", "--lambda", "3,0", "--subspace", p]);
    assert_eq!(s["membership"], "in_closure_only");
    let s = json(&["lattice", "stratum", "--lambda", "1,1,1", "--subspace", p]);
    assert_eq!(s["membership"], "outside");
}

#[test]
fn non_stable_subspace_is_outside() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub.json");
    std::fs::write(&path, r#"{"n": 1, "D": 2, "basis": [["1","0"]]}"#).unwrap();
    let s = json(&["lattice", "stratum", "--lambda", "1", "--subspace", path.to_str().unwrap()]);
    assert_eq!(s["membership"], "outside");
}

#[test]
fn dimension_guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_weylworks"))
        .args(["irrep", "--lambda", "3,2,1", "-n", "4"])
        .env("WEYLWORKS_MAX_DIM", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}
