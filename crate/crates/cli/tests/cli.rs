use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const BALL: &str = r#"{"v": {"vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1]]}}"#;
const ORTHANT: &str = r#"{"dim": 2, "v": {"vertices": [[0, 0]], "rays": [[1, 0], [0, 1]]}}"#;

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn conedual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conedual")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn polar_of(body: &str) -> Value {
    let dir = TempDir::new().unwrap();
    let o = conedual(&["polar", "--input", &write(&dir, "p.json", body)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    json_out(&o)
}

fn same_set(a: &Value, b: &Value) -> bool {
    let p: conedual_core::Polyhedron = serde_json::from_value(a.clone()).unwrap();
    let q: conedual_core::Polyhedron = serde_json::from_value(b.clone()).unwrap();
    p == q
}

fn quadruple() -> String {
    format!(
        r#"{{"dim": 2, "C": {ORTHANT},
            "D": {{"dim": 2, "v": {{"vertices": [[0, 0]], "rays": [[-1, 0], [0, -1]]}}}},
            "B1": {BALL}, "B2": {BALL}}}"#
    )
}

fn two_ray_sum(p: &str) -> Value {
    json!({
        "d": 2, "m": 2, "p": p,
        "base_ball": serde_json::from_str::<Value>(BALL).unwrap(),
        "cones": [
            {"v": {"vertices": [[0, 0]], "rays": [[1, 0]]}},
            {"v": {"vertices": [[0, 0]], "rays": [[0, 1]]}}
        ]
    })
}

#[test]
fn l1_ball_polar_is_linf_ball() {
    let out = polar_of(r#"{"v": {"vertices": [[1, 0], [-1, 0], [0, 1], [0, -1]]}}"#);
    assert!(same_set(&out, &serde_json::from_str(BALL).unwrap()));
}

#[test]
fn orthant_polar_is_negative_orthant() {
    let out = polar_of(ORTHANT);
    let neg = json!({"dim": 2, "v": {"vertices": [[0, 0]], "rays": [[-1, 0], [0, -1]]}});
    assert!(same_set(&out, &neg));
}

#[test]
fn malformed_json_exits_2() {
    let dir = TempDir::new().unwrap();
    let o = conedual(&["polar", "--input", &write(&dir, "bad.json", "{\"v\": [")]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn empty_polyhedron_exits_3() {
    let dir = TempDir::new().unwrap();
    let o = conedual(&["polar", "--input", &write(&dir, "e.json", r#"{"dim": 2, "v": {"vertices": []}}"#)]);
    assert_eq!(code(&o), 3);
    assert!(!o.stderr.is_empty());
}

#[test]
fn oversized_input_exits_3() {
    let dir = TempDir::new().unwrap();
    let o = conedual(&["polar", "--input", &write(&dir, "big.json", r#"{"dim": 11, "h": []}"#)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("too large"));
}

#[test]
fn orthant_normality_holds_with_constant_one() {
    let dir = TempDir::new().unwrap();
    let o = conedual(&["check", "--input", &write(&dir, "q.json", &quadruple()), "--property", "normal"]);
    assert_eq!(code(&o), 0);
    let r = json_out(&o);
    assert_eq!(r["holds"], json!(true));
    assert_eq!(r["alpha_star"], json!("1"));
    assert_eq!(r["dual_alpha_star"], json!("1"));
    assert_eq!(r["dual_property"], json!("conormal"));
}

#[test]
fn coadditivity_into_proper_cone_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let o = conedual(&["check", "--input", &write(&dir, "q.json", &quadruple()), "--property", "coadditive"]);
    assert_eq!(code(&o), 1);
    let r = json_out(&o);
    assert_eq!(r["holds"], json!(false));
    assert!(r["witness"].is_array());
}

#[test]
fn missing_field_exits_3() {
    let dir = TempDir::new().unwrap();
    let body = format!(r#"{{"dim": 2, "C": {ORTHANT}, "B1": {BALL}, "B2": {BALL}}}"#);
    let o = conedual(&["check", "--input", &write(&dir, "q.json", &body), "--property", "normal"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing field"));
}

#[test]
fn ando_on_two_rays() {
    let dir = TempDir::new().unwrap();
    let mut inst = two_ray_sum("1");
    inst["x"] = json!([1, 1]);
    let o = conedual(&["ando", "--input", &write(&dir, "s.json", &inst.to_string())]);
    assert_eq!(code(&o), 0);
    let r = json_out(&o);
    assert_eq!(r["norm"], json!("2"));
    assert_eq!(r["xi"], json!([["1", "0"], ["0", "1"]]));

    let o = conedual(&["ando", "--input", &write(&dir, "t.json", &two_ray_sum("1").to_string()), "--x", "1,1"]);
    assert_eq!(json_out(&o)["norm"], json!("2"));
}

#[test]
fn sums_exact_and_sampled() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "s.json", &two_ray_sum("1").to_string());
    let o = conedual(&["sums", "--input", &path]);
    assert_eq!(code(&o), 0);
    let r = json_out(&o);
    assert_eq!(r["ok"], json!(true));
    assert_eq!(r["constants"][2]["alpha_star"], json!("2"));

    let o = conedual(&["sums", "--input", &path, "--p", "2", "--samples", "300"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["q"], json!(2.0));
}

#[test]
fn cstar_item_four_has_no_violation() {
    let o = conedual(&["cstar", "--item", "4", "--n", "2", "--samples", "1000"]);
    assert_eq!(code(&o), 0);
    let r = json_out(&o);
    assert_eq!(r["max_violation"].as_f64(), Some(0.0));
    assert_eq!(r["violations"], json!(0));
}

#[test]
fn selftest_passes() {
    let o = conedual(&["selftest"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", &quadruple());
    let s = write(&dir, "s.json", &two_ray_sum("3/2").to_string());
    let runs: [&[&str]; 4] = [
        &["check", "--input", &q],
        &["sums", "--input", &s, "--samples", "200"],
        &["cstar", "--item", "7", "--n", "3", "--samples", "200"],
        &["selftest"],
    ];
    for args in runs {
        let a = conedual(args);
        let b = conedual(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn stdin_is_default_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_conedual"))
        .args(["polar", "--format", "text"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(ORTHANT.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("2 inequalities"));
}
