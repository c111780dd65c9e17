use std::path::PathBuf;
use std::process::{Command, Output};

use positroid::quiver::IceQuiver;
use serde_json::Value;

const TWO_ROW: [&str; 6] = ["--k", "2", "--n", "5", "--cell", "vword=2;lambda=3,2"];
const THREE_ROW: [&str; 6] = ["--k", "3", "--n", "6", "--cell", "vword=2,4;lambda=3,3,2"];

fn positroid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_positroid")).args(args).output().expect("spawn positroid")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn with<'a>(head: &[&'a str], cell: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(cell).copied().collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("positroid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enumerate_counts() {
    let o = positroid(&["enumerate", "--k", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("total 7\n"));

    let o = positroid(&["enumerate", "--k", "4", "--n", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 1);
    assert_eq!(v["cells"][0]["dimension"], 0);

    let o = positroid(&["enumerate", "--k", "2", "--n", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 33);
}

#[test]
fn build_matches_goldens() {
    for (name, cell) in [("two_row.json", TWO_ROW), ("three_row.json", THREE_ROW)] {
        let o = positroid(&with(&["build"], &cell));
        assert_eq!(o.status.code(), Some(0));
        let expected = std::fs::read_to_string(golden(name)).unwrap();
        assert_eq!(stdout(&o), expected, "{}", name);
    }
}

#[test]
fn three_row_bundle_shape() {
    let o = positroid(&with(&["build"], &THREE_ROW));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let faces = v["graph"]["faces"].as_array().unwrap();
    assert_eq!(faces.len(), 7);
    let vertices = v["quiver"]["vertices"].as_array().unwrap();
    let mutable: Vec<&Value> = vertices.iter().filter(|x| x["frozen"] == false).collect();
    assert_eq!(vertices.len(), 6);
    assert_eq!(mutable.len(), 1);
    assert_eq!(mutable[0]["label"], 8);
    assert_eq!(v["quiver"], v["morphism_quiver"]);
}

#[test]
fn output_is_byte_identical() {
    let args = with(&["build"], &THREE_ROW);
    assert_eq!(positroid(&args).stdout, positroid(&args).stdout);
    let args = ["verify", "--n", "4", "--format", "json", "--parallel"];
    assert_eq!(positroid(&args).stdout, positroid(&args).stdout);
    let args = with(&["twist-table"], &THREE_ROW);
    assert_eq!(positroid(&args).stdout, positroid(&args).stdout);
}

#[test]
fn export_formats() {
    let o = positroid(&with(&["export", "--format", "dot"], &THREE_ROW));
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph Q {"));
    assert!(dot.contains("8"));

    let o = positroid(&with(&["export", "--format", "json"], &THREE_ROW));
    let q: IceQuiver = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(q.labels().len(), 6);
    assert_eq!(serde_json::to_string_pretty(&q).unwrap() + "\n", stdout(&o));
}

#[test]
fn empty_cell_bundle() {
    let o = positroid(&["build", "--k", "2", "--n", "4", "--cell", "/"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["graph"]["faces"].as_array().unwrap().len(), 1);
    assert!(v["quiver"]["vertices"].as_array().unwrap().is_empty());
}

#[test]
fn twist_table_lists_every_face() {
    let o = positroid(&with(&["twist-table"], &THREE_ROW));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"].as_object().unwrap().len(), 7);
    assert_eq!(v["q"]["0"], "1");
    assert_eq!(v["q"]["8"], "t_8^-1");
    assert_eq!(v["t_in_q"].as_object().unwrap().len(), 6);
}

#[test]
fn verify_small_n_passes() {
    let o = positroid(&["verify", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn single_cell_reports_pole_entry() {
    let o = positroid(&with(&["verify", "--suite", "mutated_laurent"], &THREE_ROW));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS mutated_laurent cells=1 failed=0"));
    assert!(text.contains("q_4^-1*q'_8"), "{}", text);
}

#[test]
fn fixture_round_trip_passes() {
    let o = positroid(&["verify", "--fixture", golden("three_row.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS fixture mismatches=0"));
}

#[test]
fn corrupted_fixture_fails() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(golden("three_row.json")).unwrap()).unwrap();
    v["quiver"]["arrows"][0][2] = Value::from(7);
    v["twist"]["q"]["8"] = Value::from("t_8");
    let path = scratch("corrupt.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let o = positroid(&["verify", "--suite", "quiver_iso", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL fixture"));
    assert!(text.contains("$.quiver.arrows[0][2]"));
    assert!(text.contains("$.twist.q.8"));
    assert!(text.contains("FAIL fixture mismatches=2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(positroid(&["enumerate", "--k", "5", "--n", "3"]).status.code(), Some(2));
    assert_eq!(positroid(&["build", "--k", "2", "--n", "4", "--cell", "2,2/1x11"]).status.code(), Some(2));
    assert_eq!(positroid(&["verify", "--n", "4", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(positroid(&["verify"]).status.code(), Some(2));
    assert_eq!(positroid(&["verify", "--fixture", "/nonexistent/bundle.json"]).status.code(), Some(2));
    assert_eq!(positroid(&[]).status.code(), Some(2));
}
