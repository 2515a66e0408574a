//! The command-line binary: outputs, exit codes and determinism.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fe-complex")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, _) = run(args);
    (code, serde_json::from_str(&stdout).expect("stdout is JSON"))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn dimension_counts() {
    let (code, v) = json(&["element", "dim", "--family", "grad", "--k", "5", "--r", "2,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["counts"]["closed_form"], serde_json::json!([10, 2, 0, 4]));
    assert_eq!(v["result"]["agree"], true);
    let (code, csv, _) = run(&["element", "dim", "--family", "div", "--k", "1", "--r", "-1", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv, "source,c0,c1,c2,c3\ntable,0,0,3,0\nclosed_form,0,0,3,0\n");
}

#[test]
fn identical_runs_give_identical_reports() {
    let args = ["verify", "complex", "--suite", "hermite", "--mesh", "tet2"];
    let (code, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a["result"]["exact"], true);
    assert_eq!(
        serde_json::to_string(&without_timing(a)).unwrap(),
        serde_json::to_string(&without_timing(b)).unwrap()
    );
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["element", "dim", "--family", "grad", "--k", "5", "--r", "1,1,0"]);
    assert_eq!(code, 2);
    assert!(err.contains("r_v = 1"));
    assert_eq!(run(&["element", "dim", "--family", "grad", "--k", "5", "--r", "a,b"]).0, 2);
    assert_eq!(run(&["verify", "complex", "--suite", "hermite", "--mesh", "nowhere"]).0, 1);
    assert_eq!(run(&["no-such-verb"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    // A check that runs and fails exits 1; an unstable verdict is a result.
    let (code, v) = json(&["verify", "unisolvence", "--family", "div-pair", "--k", "4", "--r", "-1", "--r2", "0"]);
    assert_eq!((code, v["ok"].clone(), v["result"]["dofs"].clone()), (1, Value::Bool(false), serde_json::json!(106)));
    let (code, v) = json(&["verify", "div-stability", "--k", "3", "--r2", "0,0,-1", "--r3", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "unstable");
}

#[test]
fn smoothness_shorthand_expands() {
    let (_, a) = json(&["element", "dofs", "--family", "div", "--k", "2", "--r", "-1"]);
    let (_, b) = json(&["element", "dofs", "--family", "div", "--k", "2", "--r", "-1,-1,-1"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["count"], 30);
}

#[test]
fn json_file_matches_stdout_and_svg_is_written() {
    let dir = std::env::temp_dir().join(format!("fe-complex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let svg = dir.join("lattice.svg");
    let (code, stdout, _) = run(&[
        "--json",
        report.to_str().unwrap(),
        "lattice",
        "decompose",
        "--k",
        "5",
        "--r",
        "2,1,0",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), stdout);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_and_verbs() {
    let (code, v) = json(&["report", "table2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["entities"]["sums"], v["result"]["entities"]["expected"]);
    let (code, v) = json(&["report", "table1", "--witnesses"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    let (code, v) = json(&["verify", "unisolvence", "--family", "curl-pair", "--k", "2", "--r", "0,-1,-1", "--r2", "-1"]);
    assert_eq!((code, v["result"]["unisolvent"].clone()), (0, Value::Bool(true)));
    let (code, v) = json(&["verify", "trace"]);
    assert_eq!((code, v["result"]["continuous"].clone()), (0, Value::Bool(true)));
    let (code, v) = json(&["verify", "commute", "--suite", "hermite", "--samples", "2"]);
    assert_eq!((code, v["result"]["commutes"].clone()), (0, Value::Bool(true)));
    let (code, v) = json(&["verify", "div-stability", "--k", "1", "--r2", "-1", "--mesh", "tet2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["stable"], true);
    let (code, v) = json(&["element", "dofs", "--family", "nd", "--k", "5", "--r", "2,1,0"]);
    assert_eq!((code, v["result"]["count"].clone()), (0, serde_json::json!(21)));
}
