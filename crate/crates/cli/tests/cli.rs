use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .env("DESCENT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn table_writes_cache_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(dir.path(), &["table", "--type", "D", "--n", "4"]);
    let v = json(&first);
    assert_eq!(v["dim"], 16);
    assert_eq!(v["basis"].as_array().unwrap().len(), 16);
    let cache_file = dir.path().join("table-v1-D4.json");
    let cold = fs::read(&cache_file).unwrap();

    let second = run(dir.path(), &["table", "--type", "D", "--n", "4"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read(&cache_file).unwrap(), cold);

    let file: Value = serde_json::from_slice(&cold).unwrap();
    assert_eq!(file["schema_version"], 1);
    assert_eq!(file["group_type"], "D");
    assert_eq!(file["n"], 4);
}

#[test]
fn corrupt_or_stale_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    json(&run(dir.path(), &["table", "--n", "3"]));
    let path = dir.path().join("table-v1-D3.json");
    let good = fs::read(&path).unwrap();

    fs::write(&path, b"{ not json").unwrap();
    let out = run(dir.path(), &["table", "--n", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(fs::read(&path).unwrap(), good);

    let mut stale: Value = serde_json::from_slice(&good).unwrap();
    stale["schema_version"] = 0.into();
    fs::write(&path, serde_json::to_vec(&stale).unwrap()).unwrap();
    let out = run(dir.path(), &["table", "--n", "3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema_version"));
    assert_eq!(fs::read(&path).unwrap(), good);
}

#[test]
fn type_a_worked_product() {
    let dir = tempfile::tempdir().unwrap();
    json(&run(dir.path(), &["table", "--type", "A", "--n", "4"]));
    let v = json(&run(dir.path(), &["multiply", "--type", "A", "--n", "4", "--a", "[2,1,1]", "--b", "[2,2]"]));
    let terms: Vec<(String, i64)> = v["product"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["label"].as_str().unwrap().to_string(), t["coefficient"].as_i64().unwrap()))
        .collect();
    assert_eq!(
        terms,
        [
            ("[1,1,1,1]@A".to_string(), 2),
            ("[1,1,2]@A".to_string(), 1),
            ("[2,1,1]@A".to_string(), 1)
        ]
    );
}

#[test]
fn modular_multiplication_reduces() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(
        dir.path(),
        &["multiply", "--type", "A", "--n", "4", "--p", "2", "--a", "[2,1,1]", "--b", "[2,2]"],
    ));
    assert_eq!(v["p"], 2);
    assert_eq!(v["product"].as_array().unwrap().len(), 2);
}

#[test]
fn radical_mod_2_even() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["radical", "--type", "D", "--n", "4", "--p", "2"]));
    assert_eq!(v["quotient_dim"], 1);
    assert_eq!(v["is_ideal"], true);
    assert_eq!(v["matches_aJJJ_criterion"], true);
    assert_eq!(v["spanning_set"].as_array().unwrap().len(), 15);
    assert!(v["nilpotency_index"].as_u64().is_some());
}

#[test]
fn radical_char0_has_no_a_jjj_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["radical", "--n", "4"]));
    assert_eq!(v["p"], Value::Null);
    assert_eq!(v["matches_aJJJ_criterion"], Value::Null);
    assert_eq!(v["quotient_dim"], 11);
}

#[test]
fn characters_mod_3() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["characters", "--type", "D", "--n", "4", "--p", "3"]));
    assert_eq!(v["representatives"].as_array().unwrap().len(), 11);
    assert_eq!(v["modular"]["distinct_columns"].as_array().unwrap().len(), 10);
    assert_eq!(v["modular"]["indexing_labels_match"], true);

    let csv = run(dir.path(), &["characters", "--n", "4", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("label,[]@Small,"));
    assert_eq!(lines.next().unwrap(), "[]@Small,1,1,1,1,1,1,1,1,1,1,1");
}

#[test]
fn verify_d3_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--type", "D", "--n", "3"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] != "fail"));
    let again = run(dir.path(), &["verify", "--type", "D", "--n", "3"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn verify_fails_on_tampered_cache() {
    let dir = tempfile::tempdir().unwrap();
    json(&run(dir.path(), &["table", "--n", "3"]));
    let path = dir.path().join("table-v1-D3.json");
    let mut file: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    let entry = &mut file["constants"][5][3];
    *entry = (entry.as_u64().unwrap() + 1).into();
    fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();
    let out = run(dir.path(), &["verify", "--n", "3", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verification failed"));
}

#[test]
fn typea_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run(dir.path(), &["typea", "lie-action", "--a", "[1,2]", "--b", "[3]"]));
    assert_eq!(v["terms"], serde_json::json!([{"composition": [1, 2], "multiplicity": 1}]));
    let out = run(dir.path(), &["typea", "multiply", "--a", "[2,1,1]", "--b", "[2,2]", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "composition,multiplicity\n\"[1,1,1,1]\",2\n\"[1,1,2]\",1\n\"[2,1,1]\",1\n"
    );
    let out = run(dir.path(), &["typea", "multiply", "--a", "[2,1]", "--b", "[2,2]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_inputs_exit_with_error() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "--n", "3", "--p", "4"][..],
        &["radical", "--type", "A", "--n", "3"],
        &["table", "--n", "1"],
        &["table", "--n", "9"],
        &["table"],
        &["multiply", "--n", "3", "--a", "[7]", "--b", "[]"],
    ] {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(dir.path(), &["radical", "--n", "3", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&fs::read(target).unwrap()).unwrap();
    assert_eq!(v["n"], 3);
}

#[test]
fn rank_override_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["table", "--type", "A", "--n", "3", "--threads", "2", "--max-n-override", "10"]);
    assert_eq!(json(&out)["dim"], 4);
}
