use std::process::{Command, Output};

use serde_json::Value;

fn vsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsa")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = vsa(&a);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

#[test]
fn bracket_prints_the_lambda_polynomial() {
    let out = vsa(&["bracket", "--algebra", "Pi_half", "--left", "c", "--right", "d"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "(2)*lambda");
    let (code, v) = json(&["bracket", "--algebra", "V_gl11", "--critical", "--left", "e11", "--right", "e22"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["bracket"], "(-1)*lambda");
    assert_eq!(v["parameters"]["level"], "critical");
}

#[test]
fn report_shape() {
    let (_, v) = json(&["hilbert", "--ring", "m0", "--max-weight", "3"]);
    for key in ["command", "parameters", "status", "payload", "wallTime"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["payload"], serde_json::json!([1, 1, 3, 6]));
}

#[test]
fn exit_codes() {
    assert_eq!(vsa(&["check-hom", "--map", "eta"]).status.code(), Some(0));
    assert_eq!(vsa(&["check-hom", "--map", "eta", "--k", "3"]).status.code(), Some(1));
    assert_eq!(vsa(&["bracket", "--algebra", "Nope", "--left", "a", "--right", "b"]).status.code(), Some(2));
    assert_eq!(vsa(&["normalize", "--algebra", "A_phi", "--expr", ":phi"]).status.code(), Some(2));
    assert_eq!(vsa(&["check-hom", "--map", "nope"]).status.code(), Some(2));
}

#[test]
fn payloads_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wallTime");
        v
    };
    let args = ["jacobi-sample", "--algebra", "W_sl21", "--samples", "20", "--seed", "7"];
    let (_, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn corrupted_map_from_file_fails() {
    let dir = std::env::temp_dir().join(format!("vsa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eta_bad.json");
    std::fs::write(
        &path,
        r#"{"source":"W_sl21","target":"V_gl11","level":"critical",
            "images":{"G+":"e12","G-":"e21","J":"e11","S":"e11"}}"#,
    )
    .unwrap();
    let (code, v) = json(&["check-hom", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let mm = v["payload"]["mismatches"].as_array().unwrap();
    assert!(mm.iter().any(|m| m["left"] == "G+" && m["right"] == "G-" && m["discrepancy"] == "(e22)"));
}

#[test]
fn diagram_and_sugawara() {
    let out = vsa(&[
        "check-diagram", "--left", "ks_inf,id_eta_bar", "--right", "eta,q", "--probes", "J,S,G+,G-", "--critical",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (code, v) = json(&["ss", "--m", "1", "--n", "1", "--p", "2", "--k", "-1", "--check-central"]);
    assert_eq!(code, 0);
    assert!(v["payload"]["vectors"].as_array().unwrap().iter().all(|e| e["central"] == true));
    let (code, _) = json(&["ss", "--m", "1", "--n", "1", "--p", "2", "--generic", "--check-central"]);
    assert_eq!(code, 1);
}

#[test]
fn center_dimensions() {
    let (code, v) = json(&["center", "--algebra", "V_gl11", "--critical", "--max-weight", "3"]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = v["payload"]["weights"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 3, 6]);
}
