use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dqkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqkin")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_out(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const RR_SPACE: &str = r#"[[1,0,0,0,0,0,0,0],[0,0,0,1,0,0,0,0],[0,1,0,0,0,0,0,1],[0,0,1,0,-1,0,0,0]]"#;

#[test]
fn classify_rr_fixture() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rr.json", RR_SPACE);
    let v = json_out(&dqkin(&["classify", &f]));
    assert_eq!(v["verdict"], "TwoR");
    assert_eq!(v["evidence"]["quadrilateral"]["lines"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rr.json", RR_SPACE);
    assert_eq!(dqkin(&["classify", &f]).stdout, dqkin(&["classify", &f]).stdout);
}

#[test]
fn vertical_darboux_report() {
    let v = json_out(&dqkin(&["darboux", "--a", "0", "--b", "1", "--c", "1"]));
    assert_eq!(v["vertical"], true);
    let v = json_out(&dqkin(&["darboux", "--a", "1", "--b", "2", "--c", "-3"]));
    assert_eq!(v["vertical"], false);
    assert_eq!(v["handedness"], "LeftRuling");
    assert_eq!(v["p"], serde_json::json!(["-2", "1", "0", "-3"]));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "{not json");
    assert_eq!(dqkin(&["classify", &f]).status.code(), Some(2));
    let f = write(&dir, "short.json", "[[1,0,0,0,0,0,0,0]]");
    let out = dqkin(&["classify", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 4 entries"));
    assert_eq!(dqkin(&["darboux", "--a", "x", "--b", "1", "--c", "1"]).status.code(), Some(2));
    assert_eq!(dqkin(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rr.json", RR_SPACE);
    // float scalars are refused by the exact classifier
    assert_eq!(dqkin(&["--scalar", "float", "classify", &f]).status.code(), Some(1));
    let coplanar = r#"{"kind":"RR","h1":[0,0,0,1,0,0,0,0],"h2":[0,0,0,1,0,0,0,0]}"#;
    let f = write(&dir, "coplanar.json", coplanar);
    let out = dqkin(&["dyad", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid dyad"));
}

#[test]
fn dyad_space_round_trips_through_classify() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"kind":"PR","h":[0,0,0,1,0,0,0,0],"p":[0,1,0,1]}"#;
    let f = write(&dir, "pr.json", spec);
    let v = json_out(&dqkin(&["dyad", &f]));
    let space = serde_json::to_string(&v["space"]).unwrap();
    let g = write(&dir, "space.json", &space);
    assert_eq!(json_out(&dqkin(&["classify", &g]))["verdict"], "PR");
}

#[test]
fn transform_commands() {
    let dir = TempDir::new().unwrap();
    let rows: Vec<String> = (0..8)
        .map(|i| {
            let row: Vec<&str> = (0..8).map(|j| if i == j { "1" } else { "0" }).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    let f = write(&dir, "id.json", &format!("[{}]", rows.join(",")));
    let v = json_out(&dqkin(&["verify-transform", &f]));
    assert_eq!(v["overall"], true);
    let v = json_out(&dqkin(&["factor-transform", &f]));
    assert_eq!(v["l"][1], "0");
}

#[test]
fn trace_writes_csv_and_degree() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "trace.json",
        r#"{"motion":{"darboux":{"a":"1","b":"2","c":"3"}},"point":["1","1","0","0"],"params":["0","1"]}"#,
    );
    let out_path = dir.path().join("trace.csv");
    let out = dqkin(&["trace", &f, "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 2"));
    let csv = std::fs::read_to_string(Path::new(&out_path)).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,x0,x1,x2,x3");
    // the motion starts at the identity
    assert_eq!(lines[1], "0,1,1,0,0");
    assert_eq!(lines.len(), 3);
}

#[test]
fn fixed_example_and_reconstruct() {
    let v = json_out(&dqkin(&["example2"]));
    assert_eq!(v["all"], true);
    let dir = TempDir::new().unwrap();
    let unit = |k: usize| {
        let c: Vec<String> = (0..8).map(|j| if j == k { "1".into() } else { "0".into() }).collect();
        format!("[{}]", c.join(","))
    };
    // ω = [[0, I], [I, 0]] with E = last four unit vectors and the planar
    // quadrilateral of the coordinate points as solution
    let omega: Vec<String> = (0..8).map(|i| unit((i + 4) % 8)).collect();
    let e: Vec<String> = (4..8).map(unit).collect();
    let f: Vec<String> = (0..4).map(unit).collect();
    let problem = format!(
        r#"{{"omega":[{}],"e":[{}],"f_points":[{}],"centers":[[1,1,0,0,0,0,0,0],[0,1,1,0,0,0,0,0],[0,0,1,1,0,0,0,0],[1,0,0,1,0,0,0,0]]}}"#,
        omega.join(","),
        e.join(","),
        f.join(",")
    );
    let file = write(&dir, "problem.json", &problem);
    let v = json_out(&dqkin(&["reconstruct", &file]));
    assert_eq!(v["verified"], true);
    assert_eq!(v["x"], serde_json::json!(["0", "0", "0", "0"]));
}
