use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn hitchin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hitchin")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const A1_JOB: &str = r#"{"type":"A","rank":1,"divisor":[["0",4]],
  "theta":[[["0"],["-1","0","1"]],[["-4","0","1"],["0"]]]}"#;

#[test]
fn info_reports_lie_data() {
    let (code, out, _) = hitchin(&["info", "A", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["dim"], 8);
    assert_eq!(v["result"]["degrees"], serde_json::json!([2, 3]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hitchin(&["info", "A"]).0, 2);
    assert_eq!(hitchin(&["frobnicate"]).0, 2);
    assert_eq!(hitchin(&["info", "Q", "2"]).0, 2);
}

#[test]
fn invalid_lie_rank_is_a_domain_rejection() {
    assert_eq!(hitchin(&["info", "E", "9"]).0, 1);
}

#[test]
fn malformed_job_reports_schema_path() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", r#"{"divisor":[["0","four"]]}"#);
    let (code, out, err) = hitchin(&["hitchin", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("$.divisor[0][1]"), "{err}");

    let p = write(&dir, "broken.json", "{not json");
    assert_eq!(hitchin(&["cech", p.to_str().unwrap()]).0, 2);
}

#[test]
fn genericity_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    // b = (z^2 - 1)^2 has repeated roots
    let p = write(&dir, "rep.json", r#"{"divisor":[["0",4]],"b":["1","0","-2","0","1"]}"#);
    let (code, out, _) = hitchin(&["generic", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["report"]["reason"], "repeated root");
    assert_eq!(hitchin(&["cubic", p.to_str().unwrap()]).0, 1);
}

#[test]
fn reports_are_deterministic_and_embed_configuration() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a1.json", A1_JOB);
    let first = hitchin(&["periods", p.to_str().unwrap()]);
    let second = hitchin(&["periods", p.to_str().unwrap()]);
    assert_eq!(first.0, 0);
    assert_eq!(first.1, second.1);
    let v: Value = serde_json::from_str(&first.1).unwrap();
    assert_eq!(v["config"]["options"]["nodes"], 48);
    assert_eq!(v["config"]["options"]["mode"], "exact");
    assert_eq!(v["config"]["periodOptions"]["panels"], 4);
    let tau_re = &v["result"]["riemannMatrix"]["tau"][0][0][0];
    assert!(tau_re.to_string().contains('e'));
}

#[test]
fn flags_override_job_options() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a1.json", A1_JOB);
    let (code, out, _) = hitchin(&["periods", "--nodes", "32", "--fd-step", "1/500", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["options"]["nodes"], 32);
    assert_eq!(v["config"]["options"]["fdStep"], "1/500");
    assert_eq!(hitchin(&["periods", "--nodes", "1", p.to_str().unwrap()]).0, 2);
}

#[test]
fn cech_with_gram_and_pairing() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"divisor":[["0",3]],"theta":[[["0"],["0"]],[["0"],["0"]]],"options":{"gram":true},
      "alpha":{"kind":"tangent","chart0":[[0,[["0","1"],["0","0"]]]],"chart1":[[0,[["0","1"],["0","0"]]]]},
      "beta":{"kind":"cotangent","overlap":[[-1,[["0","0"],["1","0"]]]]}}"#;
    let p = write(&dir, "c.json", job);
    let (code, out, err) = hitchin(&["cech", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["pairing"], "1");
    assert_eq!(v["result"]["hypercohomology"]["h1"], 6);
    assert_eq!(v["result"]["poissonRank"], 0);

    // chart-1 term z^5 is a pole at infinity for K(D) of degree 1
    let bad = job.replace(r#""chart1":[[0,"#, r#""chart1":[[5,"#);
    let p = write(&dir, "bad.json", &bad);
    assert_eq!(hitchin(&["cech", p.to_str().unwrap()]).0, 1);
}

#[test]
fn cubic_reference_value() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "c.json", r#"{"divisor":[["0",4]],"b":["4","0","-5","0","1"],"bdot":["0","0","0","0","1"]}"#);
    let (code, out, _) = hitchin(&["cubic", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["value"], "5/9");
    assert_eq!(v["result"]["tensor"]["entries"][0][0][0], "10/9");
    let (_, out, _) = hitchin(&["cubic", "--mode", "float", p.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let re = v["result"]["value"][0].as_f64().unwrap();
    assert!((re - 5.0 / 9.0).abs() < 1e-12);
}

#[test]
fn jets_emit_equations() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "cusp.sys", "vars x, y;\nx^2 - y^3\n");
    let (code, out, _) = hitchin(&["jets", "--order", "1", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["equations"], serde_json::json!(["x_0^2 - y_0^3", "2*x_0*x_1 - 3*y_0^2*y_1"]));

    let p = write(&dir, "bad.sys", "vars x;\nx + z\n");
    let (code, _, err) = hitchin(&["jets", "--order", "1", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("undeclared identifier"), "{err}");
}

#[test]
fn verify_default_suite() {
    let (code, out, err) = hitchin(&["verify", "--suite", "default"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["allPassed"], true);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 7);
    assert_eq!(hitchin(&["verify", "--suite", "other"]).0, 2);
}
