use std::process::{Command, Output};

use serde_json::Value;

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bench"))
        .args(args)
        .output()
        .expect("bench runs")
}

fn json(args: &[&str]) -> Vec<Value> {
    let out = bench(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice::<Value>(&out.stdout).unwrap().as_array().unwrap().clone()
}

#[test]
fn range_reports_every_variant() {
    let rows = json(&["range", "--n", "5", "--reps", "2", "--warmup", "0"]);
    let variants: Vec<&str> = rows.iter().map(|r| r["variant"].as_str().unwrap()).collect();
    assert_eq!(variants, ["stream", "baseline"]);
    for r in &rows {
        assert_eq!(r["id"], "range");
        assert_eq!(r["checksum"], 10);
        assert!(r["mean_ns"].is_number() && r["min_ns"].is_number());
        assert_eq!(r["config"]["n"], 5);
        assert_eq!(r["config"]["seed"], 1);
    }
    assert_eq!(rows[0]["steps"]["seeks"], 5);
    assert!(rows[1]["steps"].is_null());
}

#[test]
fn nest_runs_both_baselines() {
    let rows = json(&["nest", "--n", "40", "--reps", "1", "--warmup", "0"]);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["checksum"] == 40 * 80));
}

#[test]
fn same_seed_same_checksums() {
    let args = ["triangle", "--rows", "300", "--reps", "1", "--warmup", "0", "--seed", "5"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a.len(), 3);
    let sums = |rows: &[Value]| rows.iter().map(|r| r["checksum"].clone()).collect::<Vec<_>>();
    assert_eq!(sums(&a), sums(&b));
    let v1 = json(&["v3", "--n", "2000", "--reps", "1", "--warmup", "0", "--seed", "1"]);
    let v2 = json(&["v3", "--n", "2000", "--reps", "1", "--warmup", "0", "--seed", "2"]);
    assert_ne!(v1[0]["checksum"], v2[0]["checksum"]);
}

#[test]
fn csv_to_file() {
    let path = std::env::temp_dir().join(format!("stream-bench-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = bench(&["rb", "--keys", "1000", "--ways", "3", "--reps", "1", "--warmup", "0", "--format", "csv", "--out", p]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,variant,mean_ns,min_ns,seeks,probes,emissions,checksum"));
    let rest: Vec<&str> = lines.collect();
    assert_eq!(rest.len(), 2);
    assert!(rest.iter().all(|l| l.starts_with("rb,")));
}

#[test]
fn bad_config_fails() {
    assert_eq!(bench(&["rb", "--ways", "4", "--keys", "10"]).status.code(), Some(2));
    assert_eq!(bench(&["range", "--n", "0"]).status.code(), Some(2));
    assert!(!bench(&["nope"]).status.success());
}
