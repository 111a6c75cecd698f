use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flopwin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flopwin")).args(args).env_remove("FLOPWIN_REPORT_DIR").output().expect("runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn eta_values() {
    let v = json(&flopwin(&["eta"]));
    let etas: Vec<i64> = v["strata"].as_array().unwrap().iter().map(|r| r["eta"].as_i64().unwrap()).collect();
    assert_eq!(etas, vec![12, 5, 12]);
}

#[test]
fn windows_both_sides() {
    let minus = json(&flopwin(&["windows", "--side", "-"]));
    assert_eq!(minus["count"], 15);
    let plus = json(&flopwin(&["windows", "--side", "+"]));
    assert_eq!(plus["count"], 14);
    let csv = flopwin(&["windows", "--side", "-", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().any(|l| l == "2,-2"));
}

#[test]
fn gamma_table_formats() {
    let t = json(&flopwin(&["gamma-table"]));
    assert_eq!(t["irreps"].as_array().unwrap().len(), 9);
    let csv = String::from_utf8(flopwin(&["gamma-table", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn semistable_point() {
    let p = r#"{"phi":[["1","0","0","0","0","0"],["0","0","0","0","0","0"]],"psi":["1","0","0","0"]}"#;
    let v = json(&flopwin(&["semistable", "--point", p, "--side", "+"]));
    assert_eq!(v["semistable"], false);
    assert_eq!(v["unstable_stratum"], 1);
}

#[test]
fn weyman_k_resolution() {
    let v = json(&flopwin(&["weyman", "--model", "lambda2-geq", "--twist=-2,2", "--drop-first"]));
    assert_eq!(v["support"].as_array().unwrap().len(), 10);
    let v = json(&flopwin(&["weyman", "--model", "lambda2-geq", "--twist=-2,2"]));
    assert_eq!(v["first_inexact_degree"], Value::Null);
}

#[test]
fn closure_with_and_without_k() {
    let has = |v: &Value, a: i64, b: i64| v["weights"].as_array().unwrap().iter().any(|w| w[0] == a && w[1] == b);
    let without = json(&flopwin(&["closure", "--without-k"]));
    assert!(has(&without, 5, 5) && !has(&without, 0, -3));
    let with = json(&flopwin(&["closure", "--with-k"]));
    assert!(has(&with, -6, -6) && has(&with, 0, -3));
}

#[test]
fn koszul_cases() {
    let v = json(&flopwin(&["koszul-tor", "--case", "z1plus", "--truncation", "6"]));
    assert_eq!(v["support"][0]["weights"], serde_json::json!([-2, -1, 0]));
    assert_eq!(v["report"]["verdict"]["verdict"], "Regular");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u3.json");
    std::fs::write(&path, r#"{"variables":[{"name":"u","weight":-1,"degree":1}],"elements":[[["1",[3]]]]}"#).unwrap();
    let v = json(&flopwin(&["koszul-tor", "--case", path.to_str().unwrap(), "--truncation", "4"]));
    assert_eq!(v["support"][0]["weights"], serde_json::json!([-2, -1, 0]));
    let low = json(&flopwin(&["koszul-tor", "--case", "z1plus", "--truncation", "2"]));
    assert_eq!(low["report"]["status"], "Inconclusive");
}

#[test]
fn hom_series_and_slices() {
    let v = json(&flopwin(&["hom-series", "--src", "0,0", "--tgt", "0,0", "--truncation", "3"]));
    assert_eq!(v["series"][0], 1);
    let v = json(&flopwin(&["slice-weights", "F-resolution"]));
    assert_eq!(v["base_weights"], serde_json::json!([1, 1, 1, 1, 1, 1, 6]));
}

#[test]
fn critical_fermat_passes() {
    let v = json(&flopwin(&["critical", "--f", "fermat", "--samples", "50", "--seed", "3"]));
    assert_eq!(v["status"], "pass");
}

#[test]
fn critical_non_fermat_reports_failure_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"terms":[["1",[3,0,0,0,0,0]],["1",[0,1,1,1,0,0]],["2",[0,0,0,0,0,3]]]}"#).unwrap();
    let out = flopwin(&["critical", "--f", path.to_str().unwrap(), "--samples", "20", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
}

#[test]
fn malformed_input_exits_2() {
    let cases: &[&[&str]] = &[
        &["semistable", "--point", "{nope", "--side", "+"],
        &["semistable", "--point", "/no/such/file.json", "--side", "+"],
        &["slice-weights", "bogus"],
        &["weyman", "--model", "bogus", "--twist", "0,0"],
        &["weyman", "--model", "lambda2-geq", "--twist", "x"],
        &["hom-series", "--src=-1,0", "--tgt", "0,0"],
        &["windows", "--side", "sideways"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(flopwin(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn figures_and_report_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_flopwin"))
        .arg("figures")
        .env("FLOPWIN_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    for name in ["windows", "k-resolution", "closure"] {
        for ext in ["svg", "json"] {
            assert!(Path::new(&dir.path().join(format!("{name}.{ext}"))).exists(), "{name}.{ext}");
        }
    }
    assert!(dir.path().join("figures.json").exists());
}

#[test]
fn verify_all_passes_and_is_reproducible() {
    let a = flopwin(&["verify-all", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 13);
    let b = flopwin(&["verify-all", "--seed", "0"]);
    assert_eq!(a.stdout, b.stdout);
}
