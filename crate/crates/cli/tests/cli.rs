use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn hypiso(fixtures: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypiso"))
        .arg("--fixtures")
        .arg(fixtures)
        .args(args)
        .env_remove("HYPISO_FIXTURES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn catalog_verify_passes() {
    let out = hypiso(&fixtures(), &["catalog", "verify", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "hypiso-report/1");
    assert_eq!(doc["reports"].as_array().unwrap().len(), 6);
    assert_eq!(doc["status"], "pass");
}

#[test]
fn cyclic_and_dickson_families_by_name() {
    for name in ["cyclic-7-3", "dickson-11-2"] {
        let out = hypiso(&fixtures(), &["catalog", "verify", "--family", name]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
    let out = hypiso(&fixtures(), &["catalog", "verify", "--family", "f8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("error"));
}

#[test]
fn theorem_table_is_reproducible() {
    let a = hypiso(&fixtures(), &["theorem-table", "--json"]);
    let b = hypiso(&fixtures(), &["theorem-table", "--json", "--jobs", "2"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    let rows = doc["reports"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let first = &rows[0];
    assert_eq!((first["family"].as_str(), first["genus"].as_u64()), (Some("f7"), Some(3)));
    assert_eq!(first["checks"][3]["evidence"]["group"], "2^3");
}

#[test]
fn missing_weil_table_is_reported() {
    let dir = std::env::temp_dir().join(format!("hypiso-missing-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(dir.join("families")).unwrap();
    std::fs::create_dir_all(dir.join("weil")).unwrap();
    for sub in ["families", "weil"] {
        for e in std::fs::read_dir(fixtures().join(sub)).unwrap() {
            let p = e.unwrap().path();
            if p.file_name().unwrap() != "linear-11.weil" {
                std::fs::copy(&p, dir.join(sub).join(p.file_name().unwrap())).unwrap();
            }
        }
    }
    let out = hypiso(&dir, &["theorem-table", "--json"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    let errors: Vec<&Value> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .filter(|c| c["status"] == "error")
        .collect();
    assert_eq!(errors.len(), 1);
    let msg = errors[0]["summary"].as_str().unwrap();
    assert!(msg.contains("linear-11.weil") && msg.contains("f11"), "{msg}");
}

#[test]
fn bad_fixture_directory() {
    let out = hypiso(Path::new("/nonexistent/fixtures"), &["catalog", "verify", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "error");
}

#[test]
fn fixture_dir_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypiso"))
        .args(["diff", "rosati", "--family", "f7"])
        .env("HYPISO_FIXTURES", fixtures())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("2·I"));
}

#[test]
fn diff_matrix_text() {
    let out = hypiso(&fixtures(), &["diff", "matrix", "--family", "f7", "--holomorphic"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, ["[0/1, 1/1] ; 0 ; 0", "0 ; [0/1, 1/1] ; 0", "[-1/1, -2/1]*t ; 0 ; [-1/1, -1/1]"]);
    let out = hypiso(&fixtures(), &["diff", "matrix", "--family", "f7", "--construction", "cubic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_command() {
    let out = hypiso(&fixtures(), &["kernel", "--family", "f15", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let ev = &json(&out)["reports"][0]["checks"][0]["evidence"];
    assert_eq!((ev["nu"].as_u64(), ev["prime"].as_u64()), (Some(10), Some(31)));
    let out = hypiso(&fixtures(), &["kernel", "--family", "f15", "--prime", "31"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn roundtrip_command() {
    let out = hypiso(&fixtures(), &["jac", "roundtrip", "--family", "f11", "--prime", "367", "--params", "s=3", "--count", "2", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("seed 5: φ̂(φ(D)) = [3]D") && text.contains("seed 6:"), "{text}");
}

#[test]
fn simple_command() {
    let out = hypiso(&fixtures(), &["simple", "--weil", "linear-11", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let ev = &json(&out)["reports"][0]["checks"][0]["evidence"];
    assert_eq!(ev["verdict"]["verdict"], "absolutely_simple");
    assert_eq!(ev["palindromic"], true);

    let out = hypiso(&fixtures(), &["simple", "--weil", "quadratic-7", "--verbatim"]);
    assert_eq!(out.status.code(), Some(1));
    let out = hypiso(&fixtures(), &["simple", "--weil", "quadratic-7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l.starts_with("d = 2 ")));

    let out = hypiso(&fixtures(), &["simple", "--weil", "quadratic-13"]);
    assert_eq!(out.status.code(), Some(2));
}
