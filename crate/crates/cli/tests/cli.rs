use std::fs;
use std::process::Command;

use latmin_cli::run;
use serde_json::{json, Value};

const SQUARE: &str = r#"{"dim":2,"vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]}"#;

fn call(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args.iter().copied());
    assert!(out.ends_with(b"\n"), "output is newline terminated");
    (code, serde_json::from_slice(&out).expect("stdout is JSON"))
}

#[test]
fn width_of_a_square() {
    let (code, v) = call(&["width", "--inline", r#"{"dim":2,"vertices":[[0,0],[5,0],[5,5],[0,5]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"width": "5", "witness": [1, 0]}));
}

#[test]
fn minima_modes() {
    let (_, body) = call(&["minima", "--mode", "body", "--inline", SQUARE]);
    assert_eq!(body["lambdas"], json!(["1", "1"]));
    let (_, diff) = call(&["minima", "--mode", "difference", "--inline", SQUARE]);
    assert_eq!(diff["lambdas"], json!(["1/2", "1/2"]));
    let (_, dual) = call(&["minima", "--mode", "dual", "--inline", SQUARE]);
    assert_eq!(dual["lambdas"], json!(["1", "1"]));
    assert_eq!(dual["witnesses"], json!([[1, 0], [0, 1]]));
}

#[test]
fn polar_of_the_square_is_the_cross_polytope() {
    let (_, v) = call(&["polar", "--inline", SQUARE]);
    assert_eq!(v["vertices"], json!([["-1", "0"], ["0", "-1"], ["0", "1"], ["1", "0"]]));
}

#[test]
fn volume_accepts_rational_strings() {
    let (_, v) = call(&["volume", "--inline", r#"{"dim":2,"vertices":[[0,0],["1/2",0],[0,3]]}"#]);
    assert_eq!(v, json!({"volume": "3/4", "toric_volume": "3/2"}));
}

#[test]
fn points_all_and_interior() {
    let tri = r#"{"dim":2,"vertices":[[0,0],[3,0],[0,3]]}"#;
    let (_, all) = call(&["points", "--inline", tri]);
    assert_eq!(all["count"], json!(10));
    let (_, inner) = call(&["points", "--mode", "interior", "--inline", tri]);
    assert_eq!(inner, json!({"count": 1, "points": [[1, 1]]}));
}

#[test]
fn toric_eps_on_a_rectangle() {
    let rect = r#"{"dim":2,"vertices":[[0,0],[3,0],[3,2],[0,2]]}"#;
    let (code, v) = call(&["toric-eps", "--vertex", "3,2", "--inline", rect]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({"eps": [
            {"exact": "5", "provenance": "invariant_point"},
            {"exact": "2", "provenance": "invariant_point"}
        ]})
    );
}

#[test]
fn toric_eps_rejects_a_non_vertex() {
    let rect = r#"{"dim":2,"vertices":[[0,0],[3,0],[3,2],[0,2]]}"#;
    let (code, v) = call(&["toric-eps", "--vertex", "-1,0", "--inline", rect]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "not_a_vertex");
}

#[test]
fn toric_bracket_reports_its_inputs() {
    let (_, v) = call(&["toric-bracket", "--inline", r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2]]}"#]);
    assert_eq!(v["lambda"], json!(["1/2", "1/2"]));
    assert_eq!(v["lambda_dual"], json!(["2", "2"]));
    assert_eq!(v["width"], "2");
    assert_eq!(v["volume"], "4");
    assert_eq!(v["eps"][1], json!({"lo": "2", "hi": "2"}));
}

#[test]
fn postulation_box_and_flag() {
    let (_, b) = call(&["postulation", "--inline", r#"{"t":[2,1]}"#]);
    assert_eq!(b["volume"], b["volume_triangulated"]);
    assert_eq!(b["volume_closed_form"], b["volume"]);
    assert_eq!(b["volume_bound"]["verdict"], "holds");
    let (_, f) = call(&["postulation", "--inline", r#"{"d":1,"p":[0],"q":3}"#]);
    assert_eq!(f["h0"], "4");
}

#[test]
fn errors_are_json_with_exit_code_two() {
    for args in [
        vec!["width"],
        vec!["width", "--inline", "not json"],
        vec!["width", "--inline", r#"{"dim":2,"vertices":[[0,0],[1,1]]}"#],
        vec!["minima", "--mode", "sideways", "--inline", SQUARE],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--suite", "sharp2d", "--dim", "3"],
        vec!["frobnicate"],
    ] {
        let (code, v) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"]["kind"].is_string(), "{args:?}");
        assert!(v["error"]["message"].is_string(), "{args:?}");
    }
}

#[test]
fn degenerate_input_is_reported_by_kind() {
    let (_, v) = call(&["width", "--inline", r#"{"dim":2,"vertices":[[0,0],[1,1]]}"#]);
    assert_eq!(v["error"]["kind"], "dimension_deficient");
}

#[test]
fn in_and_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("square.json");
    let output = dir.path().join("out.json");
    fs::write(&input, SQUARE).unwrap();
    let (code, stdout) = run(["width", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written: Value = serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written["width"], "2");

    let missing = dir.path().join("missing.json");
    let (code, v) = call(&["width", "--in", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn verify_summary_round_trips() {
    let (code, v) = call(&["verify", "--suite", "sharp2d", "--seed", "7", "--count", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["suite"], "sharp2d");
    assert_eq!(v["holds"], 50);
    assert_eq!(v["violated"], 0);
    let text = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
}

#[test]
fn verify_full_mode_lists_instances() {
    let (_, v) = call(&["verify", "--suite", "postulation", "--count", "5", "--dim", "3", "--mode", "full"]);
    assert_eq!(v["instances"].as_array().map(Vec::len), Some(5));
}

#[test]
fn binary_matches_library() {
    let args = ["verify", "--suite", "minkowski", "--seed", "3", "--count", "10"];
    let out = Command::new(env!("CARGO_BIN_EXE_latmin")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, run(args).1);

    let bad = Command::new(env!("CARGO_BIN_EXE_latmin")).arg("width").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
