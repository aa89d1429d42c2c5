// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use agrepair::codes::erasure_decode;
use agrepair::galois::Elem;
use agrepair::sim::{Cluster, StripeFile};

const BIN: &str = env!("CARGO_BIN_EXE_agrepair");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .env_remove("AGREPAIR_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn golden_stripe_file_loads_and_round_trips() {
    let text = std::fs::read_to_string(fixture("rs4.json")).unwrap();
    let file: StripeFile = serde_json::from_str(&text).unwrap();
    let cluster = Cluster::from_file(&file).unwrap();
    assert_eq!(cluster.stripes(), 2);
    let reserialized = serde_json::to_value(cluster.to_file()).unwrap();
    assert_eq!(reserialized, serde_json::from_str::<Value>(&text).unwrap());

    // node 2 holds g then 0; recover it from nodes 0 and 1
    let f = cluster.code().field();
    let known: Vec<(usize, Elem)> = (0..2).map(|j| (j, cluster.node(j).unwrap()[0])).collect();
    let decoded = erasure_decode(cluster.code(), &known).unwrap();
    assert_eq!(f.digits(decoded[2]), vec![0, 1]);
    assert_eq!(f.digits(decoded[3]), vec![1, 1]);
}

#[test]
fn golden_fail_repair_restores_file() {
    let dir = TempDir::new().unwrap();
    let state = dir.path().join("state.json");
    std::fs::copy(fixture("rs4.json"), &state).unwrap();
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&state).unwrap()).unwrap();

    stdout_json(&run(dir.path(), &["fail", "--state", "state.json", "--node", "2"]));
    let failed: Value = serde_json::from_str(&std::fs::read_to_string(&state).unwrap()).unwrap();
    assert_eq!(failed["nodes"][2]["symbols"], Value::Null);
    assert_eq!(failed["failure"]["node"], 2);
    assert_eq!(failed["failure"]["withheld"], serde_json::json!([[0, 1], [0, 0]]));

    let v = stdout_json(&run(dir.path(), &["verify", "--state", "state.json"]));
    assert_eq!((v["pass"].as_bool(), v["decoder_agrees"].as_bool()), (Some(true), Some(true)));

    let out = stdout_json(&run(dir.path(), &["repair", "--state", "state.json", "--transcript", "t.json"]));
    assert_eq!(out["equal"], true);
    // three helpers, one bit each, two stripes
    assert_eq!(out["symbols"], 6);
    assert_eq!(out["bits"], 6.0);
    let repaired: Value = serde_json::from_str(&std::fs::read_to_string(&state).unwrap()).unwrap();
    assert_eq!(repaired, original);

    let transcript: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(transcript["transcripts"].as_array().unwrap().len(), 2);
    assert_eq!(transcript["scheme"]["target"], 2);
}

#[test]
fn encode_fail_repair_hermitian() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "cfg.json", r#"{"kind":"hermitian","p":2,"t":4,"r":4,"s":20,"l":2,"seed":11}"#);
    let enc = stdout_json(&run(dir.path(), &["encode", "--config", "cfg.json", "--stripes", "3", "--out", "h.json"]));
    assert_eq!(enc["n"], 64);
    stdout_json(&run(dir.path(), &["fail", "--state", "h.json", "--node", "17"]));
    let v = stdout_json(&run(dir.path(), &["verify", "--state", "h.json", "--l", "2", "--d", "45"]));
    assert_eq!(v["pass"], true);
    let out = stdout_json(&run(dir.path(), &["repair", "--state", "h.json", "--l", "2", "--d", "45"]));
    assert_eq!(out["equal"], true);
    assert_eq!(out["d"], 45);
    // 45 helpers, 2 sub-symbols of one bit each, 3 stripes
    assert_eq!(out["bits"], 270.0);
    assert_eq!(out["bound_bits_per_stripe"], 90.0);
}

#[test]
fn repair_without_failure_is_an_error() {
    let dir = TempDir::new().unwrap();
    std::fs::copy(fixture("rs4.json"), dir.path().join("s.json")).unwrap();
    let out = run(dir.path(), &["repair", "--state", "s.json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nothing to repair"));
}

#[test]
fn degree_condition_violation_names_the_inequality() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "cfg.json", r#"{"kind":"rs","p":2,"t":4,"k":10,"l":3,"trials":2}"#);
    let out = run(dir.path(), &["bench", "--config", "cfg.json"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("k <= d - p^l + 1"), "{err}");
}

#[test]
fn bench_writes_csv_and_json() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "cfg.json", r#"{"kind":"rs","p":2,"t":4,"k":8,"l":3,"seed":2,"trials":5}"#);
    let out = stdout_json(&run(dir.path(), &["bench", "--config", "cfg.json", "--out", "b.csv"]));
    assert_eq!(out["pass"], true);
    let text = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("target,d,symbols,bits,bound_bits,equal"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.ends_with(",15,15,15.0,15.0,true")), "{rows:?}");
    let record: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("b.json")).unwrap()).unwrap();
    assert_eq!(record["config"]["trials"], 5);
}

#[test]
fn verify_config_agrees_with_decoder() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "cfg.json",
        r#"{"kind":"hermitian","p":3,"t":2,"r":3,"s":10,"l":1,"seed":4,"trials":20,"helpers":"random-d","d":20,"variant":"hermitian-generic-weak"}"#,
    );
    let out = stdout_json(&run(dir.path(), &["verify", "--config", "cfg.json"]));
    assert_eq!((out["pass"].as_bool(), out["decoder_agrees"].as_bool()), (Some(true), Some(true)));
}

#[test]
fn params_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["params", "--rate", "0.875", "--q", "64", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("name,status,value,reason"));
    assert!(text.lines().any(|l| l.starts_with("msr_storage_equiv,value,5.25")), "{text}");

    let args = ["params", "--n", "512", "--m", "448", "--r", "8", "--p", "8", "--l", "1"];
    let v = stdout_json(&run(dir.path(), &args));
    assert_eq!(v["outputs"]["thm46_B"]["status"], "value");
    assert_eq!(v["outputs"]["thm46_B"]["value"], 1533.0);
}

#[test]
fn out_dir_redirects_relative_outputs() {
    let dir = TempDir::new().unwrap();
    let out_dir = TempDir::new().unwrap();
    write(dir.path(), "cfg.json", r#"{"kind":"rs","p":2,"t":2,"k":2,"l":1,"trials":2}"#);
    let out = Command::new(BIN)
        .args(["bench", "--config", "cfg.json", "--out", "r.csv"])
        .current_dir(dir.path())
        .env("AGREPAIR_OUT_DIR", out_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out_dir.path().join("r.csv").exists());
    assert!(!dir.path().join("r.csv").exists());
}

#[test]
fn unknown_config_fields_are_rejected() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "cfg.json", r#"{"kind":"rs","p":2,"t":2,"k":2,"l":1,"bogus":1}"#);
    let out = run(dir.path(), &["bench", "--config", "cfg.json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}
