use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn hallcount(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallcount"))
        .args(args)
        .env("HALLCOUNT_CACHE_DIR", cache)
        .env_remove("HALLCOUNT_MAX_POINTS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn grassmannian_of_k2_is_projective_line() {
    let dir = TempDir::new().unwrap();
    let o = hallcount(dir.path(), &["grass", "--quiver", "K2", "--alpha", "1", "1", "--gamma", "0", "1", "--sigma", "1", "-1", "--transfer"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["normalized", "q", "+", "1"]), "{text}");
    assert!(text.contains("passed     true"));
}

#[test]
fn json_output_matches_golden_files() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str]); 5] = [
        ("grass_k2.json", &["grass", "--quiver", "K2", "--alpha", "1", "1", "--gamma", "0", "1", "--sigma", "1", "-1", "--transfer"]),
        ("moduli_k3.json", &["moduli", "--quiver", "K3", "--alpha", "1", "2", "--sigma", "2", "-1"]),
        ("series_k3.json", &["series", "--quiver", "K3", "--sigma", "1", "-1", "--truncation", "4"]),
        ("dilog_a2.json", &["dilog", "--quiver", "A2"]),
        ("cluster_a2.json", &["cluster-var", "--quiver", "A2", "--alpha", "1", "1", "--sigma", "1", "-1"]),
    ];
    for (file, args) in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let o = hallcount(dir.path(), &full);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&o), golden(file), "{file}");
    }
}

#[test]
fn quiver_file_and_k4_moduli() {
    let dir = TempDir::new().unwrap();
    let qf = dir.path().join("k4.q");
    fs::write(&qf, "vertices: 1 2\narrows: 1->2 *4\n").unwrap();
    let o = hallcount(dir.path(), &["--format", "json", "moduli", "--quiver", qf.to_str().unwrap(), "--alpha", "3", "4", "--sigma", "4", "-3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let norm = v["normalized"].as_str().unwrap();
    assert!(norm.starts_with("q^24 + q^23 + 3*q^22 + 5*q^21 + 9*q^20"), "{norm}");
    assert!(norm.contains("77*q^12"));
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["--format", "json", "series", "--quiver", "K2", "--sigma", "1", "-1", "--truncation", "6"];
    let fresh = hallcount(dir.path(), &args);
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let cached = hallcount(dir.path(), &args);
    assert_eq!(fresh.stdout, cached.stdout);

    let mut uncached = vec!["--no-cache"];
    uncached.extend_from_slice(&args);
    assert_eq!(hallcount(dir.path(), &uncached).stdout, fresh.stdout);

    // a tampered entry is ignored and replaced
    let entry = fs::read_to_string(&entries[0]).unwrap();
    fs::write(&entries[0], entry.replace("q^2", "q^3")).unwrap();
    assert_eq!(hallcount(dir.path(), &args).stdout, fresh.stdout);
    fs::write(&entries[0], "{ not json").unwrap();
    assert_eq!(hallcount(dir.path(), &args).stdout, fresh.stdout);
    assert_eq!(fs::read_to_string(&entries[0]).unwrap(), entry);
}

#[test]
fn verify_a2_passes() {
    let dir = TempDir::new().unwrap();
    let o = hallcount(dir.path(), &["verify", "--quiver", "A2", "--q", "2", "--max-dim", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    // usage: wrong vector length, unknown quiver, missing argument, malformed file
    assert_eq!(hallcount(d, &["moduli", "--quiver", "K2", "--alpha", "1", "1", "1"]).status.code(), Some(2));
    assert_eq!(hallcount(d, &["moduli", "--quiver", "nonexistent.q", "--alpha", "1"]).status.code(), Some(2));
    assert_eq!(hallcount(d, &["grass", "--quiver", "K2", "--alpha", "1", "1"]).status.code(), Some(2));
    let bad = d.join("bad.q");
    fs::write(&bad, "vertices: 1 2\narrows: 1->3\n").unwrap();
    let o = hallcount(d, &["moduli", "--quiver", bad.to_str().unwrap(), "--alpha", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.q:2:"));
    assert_eq!(hallcount(d, &["dilog", "--quiver", "K2"]).status.code(), Some(2));

    // budget
    let o = Command::new(env!("CARGO_BIN_EXE_hallcount"))
        .args(["verify", "--quiver", "K2", "--max-dim", "4"])
        .env("HALLCOUNT_CACHE_DIR", d)
        .env("HALLCOUNT_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn flag_and_cluster_verification() {
    let dir = TempDir::new().unwrap();
    let o = hallcount(dir.path(), &["flag", "--quiver", "A2", "--part", "1,0", "--part", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[1,0],[0,1]]"));
    let o = hallcount(dir.path(), &["cluster-var", "--quiver", "K2", "--alpha", "1", "2", "--sigma", "2", "-1", "--verify", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 2);
}
