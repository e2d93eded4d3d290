use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn autl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autl")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

const LOOP_TABLE: &str =
    r#"{"name":"loop5","kind":"cayley","order":5,"table":[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#;

fn statuses(report: &Value) -> Vec<String> {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["status"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn verify_q8() {
    let o = autl(&["verify", "--builtin", "Q8"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = stdout_json(&o);
    assert_eq!(r["autl_eq_inn"], true);
    assert_eq!(r["aut_order"], 24);
    assert_eq!(r["absolute_centre_order"], 2);
}

#[test]
fn verify_heisenberg3() {
    let o = autl(&["verify", "--builtin", "heisenberg3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = stdout_json(&o);
    assert_eq!(r["autl_eq_inn"], false);
    assert!(statuses(&r).iter().all(|s| s == "holds" || s == "not_applicable"));
}

#[test]
fn verify_rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("malformed.json");
    fs::write(&path, r#"{"name": "x", "kind": "cayley", "order": 2"#).unwrap();
    let o = autl(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("malformed"), "{}", stderr(&o));
}

#[test]
fn verify_names_the_violated_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.json");
    fs::write(&path, LOOP_TABLE).unwrap();
    let o = autl(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("associativity"), "{}", stderr(&o));

    fs::write(&path, r#"{"name":"latin","kind":"cayley","order":2,"table":[[0,1],[1,1]]}"#).unwrap();
    let o = autl(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("latin square"), "{}", stderr(&o));

    fs::write(&path, r#"{"name":"p","kind":"permutation","degree":3,"generators":[[0,0,1]]}"#).unwrap();
    let o = autl(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bijection"), "{}", stderr(&o));
}

#[test]
fn verify_exit_code_on_cap() {
    let o = autl(&["verify", "--builtin", "Q8", "--aut-cap", "5"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn unknown_builtin_and_bad_config() {
    assert_eq!(code(&autl(&["verify", "--builtin", "nope"])), 2);
    assert_eq!(code(&autl(&["verify", "--builtin", "Q8", "--jobs", "0"])), 2);
    assert_eq!(code(&autl(&["verify", "--builtin", "Q8", "--autl-route", "nope"])), 2);
    assert_eq!(code(&autl(&["verify", "--builtin", "Q8", "--format", "xml"])), 2);
}

#[test]
fn verify_example_files() {
    for (file, order) in [("corpus/examples/q8.json", 8), ("corpus/examples/s3.json", 6)] {
        let o = autl(&["verify", "--file", repo_path(file).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{file}: {}", stderr(&o));
        assert_eq!(stdout_json(&o)["order"], order);
    }
    let o = autl(&["verify", "--file", repo_path("corpus/examples/small.jsonl").to_str().unwrap()]);
    assert_eq!(code(&o), 2, "several groups are not one group");
}

#[test]
fn aut_dumps() {
    let o = autl(&["aut", "--builtin", "D8"]);
    assert_eq!(code(&o), 0);
    let d = stdout_json(&o);
    assert_eq!((d["aut_order"].as_u64(), d["inn_order"].as_u64(), d["autl_order"].as_u64()), (Some(8), Some(4), Some(4)));

    let d = stdout_json(&autl(&["aut", "--builtin", "C2"]));
    assert_eq!(d["aut_order"], 1);

    let d = stdout_json(&autl(&["aut", "--builtin", "quaternion16"]));
    assert_eq!(d["inn_order"], 8);
}

#[test]
fn census_builtin_up_to_27() {
    let o = autl(&["census", "--max-order", "27"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = stdout_json(&o);
    assert!(c["summary"]["nonabelian_p_groups"].as_u64().unwrap() >= 4);
    assert_eq!(c["summary"]["total_fails"], 0);
    assert_eq!(c["summary"]["errors"], 0);
}

#[test]
fn census_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = autl(&["census", "--corpus-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let c = stdout_json(&o);
    assert_eq!(c["summary"]["groups"], 0);
    assert_eq!(c["outcomes"].as_array().unwrap().len(), 0);
}

#[test]
fn census_skips_broken_tables() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a_loop.json"), LOOP_TABLE).unwrap();
    fs::copy(repo_path("corpus/examples/q8.json"), dir.path().join("b_q8.json")).unwrap();
    fs::copy(repo_path("corpus/examples/small.jsonl"), dir.path().join("c_small.jsonl")).unwrap();
    let o = autl(&["census", "--corpus-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let err = stderr(&o);
    assert!(err.contains("skipped") && err.contains("a_loop.json") && err.contains("associativity"), "{err}");
    let report = stdout_json(&o);
    let labels: Vec<&str> = report["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["Q8", "C4", "D8"]);
}

#[test]
fn census_order16_corpus() {
    let o = autl(&["census", "--corpus-dir", repo_path("corpus/order16").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = stdout_json(&o);
    assert_eq!(c["summary"]["groups"], 9);
    assert_eq!(c["summary"]["nonabelian_p_groups"], 9);
    assert_eq!(c["summary"]["total_fails"], 0);
}

#[test]
fn census_is_independent_of_thread_count() {
    for format in ["json", "csv", "markdown"] {
        let one = autl(&["census", "--max-order", "32", "--jobs", "1", "--format", format]);
        let eight = autl(&["census", "--max-order", "32", "--jobs", "8", "--format", format]);
        assert_eq!(code(&one), 0);
        assert_eq!(one.stdout, eight.stdout, "{format}");
    }
}

#[test]
fn csv_header_documents_columns() {
    let o = autl(&["census", "--max-order", "8", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    let doc = lines.next().unwrap();
    let header = lines.next().unwrap();
    assert!(doc.starts_with('#'));
    assert!(doc.contains(header));
    assert!(header.starts_with("label,order,prime,"));
    assert!(header.ends_with(",error"));
}

#[test]
fn warm_cache_gives_identical_reports() {
    let cache = tempfile::tempdir().unwrap();
    let c = cache.path().to_str().unwrap();
    let cold = autl(&["census", "--max-order", "27", "--cache-dir", c]);
    let entries = fs::read_dir(cache.path()).unwrap().count();
    assert!(entries > 0);
    let warm = autl(&["census", "--max-order", "27", "--cache-dir", c]);
    let uncached = autl(&["census", "--max-order", "27"]);
    assert_eq!(code(&warm), 0);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
    assert_eq!(fs::read_dir(cache.path()).unwrap().count(), entries);
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let cache = tempfile::tempdir().unwrap();
    let c = cache.path().to_str().unwrap();
    let fresh = autl(&["verify", "--builtin", "Q8", "--cache-dir", c]);
    let entry = fs::read_dir(cache.path()).unwrap().next().unwrap().unwrap().path();
    let mut bytes = fs::read(&entry).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x5a;
    fs::write(&entry, bytes).unwrap();
    let again = autl(&["verify", "--builtin", "Q8", "--cache-dir", c]);
    assert_eq!(code(&again), 0);
    assert!(stderr(&again).contains("corrupt"), "{}", stderr(&again));
    assert_eq!(fresh.stdout, again.stdout);

    fs::write(&entry, b"garbage").unwrap();
    let third = autl(&["verify", "--builtin", "Q8", "--cache-dir", c]);
    assert_eq!(fresh.stdout, third.stdout);
}

#[test]
fn no_cache_dir_means_no_files() {
    let cwd = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_autl"))
        .args(["census", "--max-order", "8"])
        .current_dir(cwd.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_dir(cwd.path()).unwrap().count(), 0);
}

#[test]
fn out_dir_receives_per_group_reports() {
    let out = tempfile::tempdir().unwrap();
    let o = autl(&["census", "--max-order", "8", "--format", "markdown", "--out-dir", out.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(out.path().join("census.md")).unwrap(), o.stdout);
    let groups = fs::read_dir(out.path().join("groups")).unwrap().count();
    assert_eq!(groups, 11);
}

#[test]
fn check_selection() {
    let o = autl(&["verify", "--builtin", "D8", "--checks", "autl-eq-inner,inner-in-autl"]);
    assert_eq!(code(&o), 0);
    let ids: Vec<String> = stdout_json(&o)["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["result_id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["autl-eq-inner", "inner-in-autl"]);
    assert_eq!(code(&autl(&["verify", "--builtin", "D8", "--checks", "bogus"])), 2);
}
