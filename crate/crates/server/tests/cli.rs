use marksheet_core::fixtures;
use std::process::Command;

fn marksheet() -> Command {
    Command::new(env!("CARGO_BIN_EXE_marksheet"))
}

#[test]
fn parse_fixture_prints_five_records() {
    let out = marksheet()
        .arg("parse")
        .arg(fixtures::fixtures_dir().join("gujarat.ocr.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["detected_state"], "Gujarat");
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
}

#[test]
fn parse_writes_out_file_with_stage_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let status = marksheet()
        .args(["parse", "--no-post", "--no-pre", "--out"])
        .arg(&out_path)
        .arg(fixtures::fixtures_dir().join("gujarat.ocr.json"))
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(out_path).unwrap()).unwrap();
    assert_eq!(v["stages"], serde_json::json!({"preprocess": false, "postprocess": false}));
}

#[test]
fn parse_missing_file_exits_one() {
    let out = marksheet().args(["parse", "missing.file"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.file"));
}

#[test]
fn unknown_flag_exits_two_with_usage() {
    let out = marksheet().args(["parse", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

fn eval(preset: &str, jobs: &str, report: &std::path::Path) -> std::process::Output {
    let corpus = fixtures::corpus_dir();
    marksheet()
        .arg("eval")
        .arg(&corpus)
        .arg(corpus.join("gold.json"))
        .args([preset, "--jobs", jobs, "--report"])
        .arg(report)
        .output()
        .unwrap()
}

#[test]
fn eval_prints_table_and_deterministic_report() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let out = eval("--v4", "1", &a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8_lossy(&out.stdout);
    for row in ["5 marks", "4 marks", "4-5 marks", "0-3 marks"] {
        assert!(table.contains(row), "{table}");
    }
    assert!(eval("--v4", "6", &b).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let v4: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let v3_path = dir.path().join("v3.json");
    assert!(eval("--v3", "2", &v3_path).status.success());
    let v3: serde_json::Value = serde_json::from_slice(&std::fs::read(&v3_path).unwrap()).unwrap();
    assert_eq!(v3["version"], "v3");
    assert!(v4["buckets"]["four_or_five"].as_f64() > v3["buckets"]["four_or_five"].as_f64());
}

#[test]
fn eval_missing_gold_names_document() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = fixtures::corpus_dir();
    let mut gold: serde_json::Map<String, serde_json::Value> =
        serde_json::from_slice(&std::fs::read(corpus.join("gold.json")).unwrap()).unwrap();
    gold.remove("syn-05-uttarakhand");
    let gold_path = dir.path().join("gold.json");
    std::fs::write(&gold_path, serde_json::to_vec(&gold).unwrap()).unwrap();
    let out = marksheet().arg("eval").arg(&corpus).arg(&gold_path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syn-05-uttarakhand"));
    assert!(!dir.path().join("gold.v4.report.json").exists());
}

#[test]
fn perfect_corpus_is_all_five() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    std::fs::copy(fixtures::fixtures_dir().join("gujarat.ocr.json"), corpus.join("gj-12431.ocr.json")).unwrap();
    let gold = format!("{{\"gj-12431\": {}}}", fixtures::GUJARAT_GOLD);
    std::fs::write(dir.path().join("gold.json"), gold).unwrap();
    let out = marksheet().arg("eval").arg(&corpus).arg(dir.path().join("gold.json")).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("gold.v4.report.json")).unwrap()).unwrap();
    assert_eq!(report["buckets"]["five"], 100.0);
}
