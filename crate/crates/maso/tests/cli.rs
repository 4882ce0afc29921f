use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn maso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maso")).args(args).output().unwrap()
}

fn maso_threads(threads: usize, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maso"))
        .env("RAYON_NUM_THREADS", threads.to_string())
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generated(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = maso(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_is_byte_identical_per_seed() {
    let dir = TempDir::new().unwrap();
    let a = generated(&dir, "a.json", &["--kind", "welfare", "--n", "4", "--k", "2", "--seed", "7"]);
    let b = generated(&dir, "b.json", &["--kind", "welfare", "--n", "4", "--k", "2", "--seed", "7"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn empty_algorithm_list_gives_an_empty_report() {
    let dir = TempDir::new().unwrap();
    let inst = generated(&dir, "w.json", &["--kind", "welfare", "--n", "4", "--seed", "1"]);
    let o = maso(&["run", "--instance", s(&inst), "--seeds", "0..5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn welfare_suite_has_one_row_per_cell() {
    let dir = TempDir::new().unwrap();
    let inst = generated(&dir, "w.json", &["--kind", "welfare", "--n", "4", "--k", "2", "--seed", "7"]);
    let out = dir.path().join("report.csv");
    let o = maso(&[
        "run", "--instance", s(&inst), "--algo", "lifted_greedy", "--algo", "maximize_pipeline",
        "--seeds", "0..50", "--out", s(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), maso::report::COLUMNS);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 100);
    assert!(rows[..50].iter().all(|r| &r[1] == "lifted-greedy"));
    assert!(rows.iter().all(|r| &r[3] == "true" && !r[7].is_empty()));
    assert!(rows.iter().enumerate().all(|(i, r)| r[2] == (i % 50).to_string()));
}

#[test]
fn fracture_on_vertex_cover_is_always_feasible() {
    let dir = TempDir::new().unwrap();
    let a = generated(&dir, "vc1.json", &["--kind", "vertex-cover", "--n", "6", "--k", "2", "--seed", "3"]);
    let b = generated(&dir, "vc2.json", &["--kind", "vertex-cover", "--n", "5", "--k", "3", "--seed", "4"]);
    let o = maso(&["run", "--instance", s(&a), "--instance", s(&b), "--algo", "fracture-expand-return", "--seeds", "0..10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.split(',').nth(3) == Some("true")));
    assert!(rows[..10].iter().all(|r| r.starts_with("vc1,")));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let a = generated(&dir, "hs.json", &["--kind", "hitting-set", "--n", "6", "--k", "2", "--seed", "5"]);
    let b = generated(&dir, "fl.json", &["--kind", "facility-location", "--n", "5", "--k", "3", "--seed", "5"]);
    let args = [
        "run", "--instance", s(&a), "--instance", s(&b), "--algo", "bounded-blocker", "--algo", "disjointify-max",
        "--algo", "brute-force", "--seeds", "0..8", "--format", "json",
    ];
    let one = maso_threads(1, &args);
    let many = maso_threads(4, &args);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, maso_threads(4, &args).stdout);
    let rows: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 48);
    assert!(rows.iter().all(|r| r["allocation"].is_array() && r["runtime_ms"].is_null()));
    assert!(rows.iter().filter(|r| r["algorithm"] == "brute-force").all(|r| r["ratio"] == 1.0));
}

#[test]
fn timings_fill_the_runtime_column() {
    let dir = TempDir::new().unwrap();
    let inst = generated(&dir, "w.json", &["--kind", "welfare", "--n", "3", "--seed", "2"]);
    let o = maso(&["run", "--instance", s(&inst), "--algo", "lifted-greedy", "--timings"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(!row.split(',').nth(9).unwrap().is_empty());
}

#[test]
fn certification_cap_is_reported_per_row() {
    let dir = TempDir::new().unwrap();
    let inst = generated(&dir, "w.json", &["--kind", "welfare", "--n", "6", "--seed", "2"]);
    let o = maso(&["run", "--instance", s(&inst), "--algo", "lifted-greedy", "--seeds", "0..3", "--caps-override", "10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for row in text.lines().skip(1) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[3], "true");
        assert!(cells[6].is_empty() && cells[7].is_empty());
        assert!(cells[10].contains("capacity"), "{row}");
    }
}

#[test]
fn inapplicable_algorithm_is_a_spec_error() {
    let dir = TempDir::new().unwrap();
    let inst = generated(&dir, "vc.json", &["--kind", "vertex-cover", "--n", "4", "--seed", "2"]);
    let o = maso(&["run", "--instance", s(&inst), "--algo", "lifted-greedy"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sense max"));
}

#[test]
fn brute_force_beyond_its_cap_exits_with_capacity() {
    let dir = TempDir::new().unwrap();
    let inst = generated(&dir, "w.json", &["--kind", "welfare", "--n", "16", "--k", "3", "--seed", "2"]);
    let o = maso(&["run", "--instance", s(&inst), "--algo", "brute-force"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("capacity"));
}

#[test]
fn verify_runs_named_suites() {
    let o = maso(&["verify", "extensions"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS [ 1]"));
    let o = maso(&["verify", "oracle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS [11]"));
}

#[test]
fn verify_rejects_unknown_suites_and_cap_overrides() {
    assert_eq!(code(&maso(&["verify", "everything"])), 3);
    let o = maso(&["verify", "acceptance", "--caps-override", "100"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));
}

#[test]
fn lift_graph_prints_parallel_copies() {
    let o = maso(&["lift-graph", "--graph", "complete:3", "--k", "2"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"], 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    assert_eq!(v["pi"], serde_json::json!([0, 1, 2, 3, 4, 5]));
    assert!(v["adjacency"].as_array().unwrap().iter().all(|a| a.as_array().unwrap().len() == 4));
}

#[test]
fn help_exits_cleanly() {
    let o = maso(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("generate"));
}
