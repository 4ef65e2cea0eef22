use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn mmforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmforge")).args(args).env_remove("MMFORGE_SEED").output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn multiplicities(cert: &Value) -> Vec<u64> {
    let mut m: Vec<u64> =
        cert["eigen"]["clusters"].as_array().unwrap().iter().map(|c| c["multiplicity"].as_u64().unwrap()).collect();
    m.sort_unstable();
    m
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bipartite_auto_round_trip() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("cert.json");
    let out = mmforge(&["construct", "--family", r#"{"CompleteBipartite":[3,3]}"#, "--target", "auto", "--out", path_str(&cert)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(multiplicities(&json(&cert)), [3, 3]);
    assert_eq!(mmforge(&["verify", path_str(&cert)]).status.code(), Some(0));
}

#[test]
fn tampered_certificate_fails_with_cluster_message() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("cert.json");
    assert!(mmforge(&["construct", "--family", r#"{"Complete":4}"#, "--out", path_str(&cert)]).status.success());
    let mut c = json(&cert);
    let rows = &mut c["matrix"]["rows"];
    for (i, j) in [(0, 1), (1, 0)] {
        let x = rows[i][j].as_f64().unwrap();
        rows[i][j] = Value::from(x + 0.25);
    }
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&c).unwrap()).unwrap();
    let out = mmforge(&["verify", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cluster"));
}

#[test]
fn path_bound_from_tree_rule() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("path5.edges");
    fs::write(&edges, "0 1\n1 2\n2 3\n3 4\n").unwrap();
    let out = mmforge(&["bound", "--graph", path_str(&edges)]);
    assert!(out.status.success());
    let b: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(b["upper"], 1);
    let rules: Vec<&str> = b["provenance"].as_array().unwrap().iter().map(|p| p["rule"].as_str().unwrap()).collect();
    assert!(rules.contains(&"induced_tree"), "{rules:?}");
}

#[test]
fn graph6_and_family_bounds() {
    let dir = TempDir::new().unwrap();
    let g6 = dir.path().join("k4.g6");
    fs::write(&g6, "C~\n").unwrap();
    let out = mmforge(&["bound", "--graph", path_str(&g6), "--format", "g6"]);
    let b: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(b["upper"], 2);

    let out = mmforge(&["bound", "--family", r#"{"Complete":6}"#]);
    let b: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((b["lower"].as_u64(), b["upper"].as_u64()), (Some(3), Some(3)));
}

#[test]
fn explicit_target_and_csv_export() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("m.csv");
    let target = r#"[{"value":2.0,"multiplicity":1},{"value":1.0,"multiplicity":2}]"#;
    let out = mmforge(&["construct", "--family", r#"{"Complete":3}"#, "--target", target, "--csv", path_str(&csv)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(multiplicities(&cert), [1, 2]);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,3\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn parse_and_validation_errors_exit_2() {
    assert_eq!(mmforge(&["construct", "--family", "{not json"]).status.code(), Some(2));
    assert_eq!(mmforge(&["construct", "--family", r#"{"Complete":0}"#]).status.code(), Some(2));
    assert_eq!(mmforge(&["verify", "/nonexistent/cert.json"]).status.code(), Some(2));
    assert_eq!(mmforge(&["bound"]).status.code(), Some(2));
    let wrong_size = r#"[{"value":1.0,"multiplicity":2}]"#;
    assert_eq!(mmforge(&["construct", "--family", r#"{"Complete":3}"#, "--target", wrong_size]).status.code(), Some(2));
}

#[test]
fn seed_flag_beats_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_mmforge"));
        cmd.args(["construct", "--family", r#"{"Complete":4}"#]).env_remove("MMFORGE_SEED");
        if let Some(e) = env {
            cmd.env("MMFORGE_SEED", e);
        }
        if let Some(f) = flag {
            cmd.args(["--seed", f]);
        }
        let c: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        c["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, None), 0x5EED);
    assert_eq!(run(Some("7"), None), 7);
    assert_eq!(run(Some("7"), Some("0x10")), 16);
}

#[test]
fn output_is_deterministic() {
    let args = ["construct", "--family", r#"{"ComplementForm":{"p0":2,"pairs":[[1,2]],"r":1}}"#];
    let a = mmforge(&args);
    let b = mmforge(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn search_writes_verifiable_certificate() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("c4.edges");
    fs::write(&edges, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let cert = dir.path().join("found.json");
    let out = mmforge(&["search", "--graph", path_str(&edges), "--restarts", "4", "--out", path_str(&cert)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(multiplicities(&json(&cert)), [2, 2]);
    assert_eq!(mmforge(&["verify", path_str(&cert)]).status.code(), Some(0));
}

#[test]
fn catalog_lists_families() {
    let out = mmforge(&["catalog"]);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows.len() >= 8);
    assert!(rows.iter().all(|r| r["family"].is_string() && r["anchor"].is_string()));
}
