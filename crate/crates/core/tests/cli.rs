use std::process::{Command, Output};

use serde_json::Value;

fn invclosed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invclosed"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_stderr(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("error line");
    serde_json::from_str(line).expect("stderr ends with a JSON object")
}

#[test]
fn verify_gf9() {
    let v = json_stdout(&invclosed(&["verify", "--field", "9"]));
    let r = &v[0];
    assert_eq!(r["found"], 3);
    assert_eq!(r["predicted"], 3);
    assert_eq!(r["subspaces_scanned"], 6);
    assert_eq!(r["modulus"], serde_json::json!([1, 0, 1]));
    assert_eq!(r["violations"], serde_json::json!([]));
    assert!(r.get("wall_time").is_none());
    let kinds: Vec<&str> = r["inverse_closed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["Trivial", "TraceZeroKernel", "Subfield", "Subfield"]);
}

#[test]
fn verify_over_budget_is_an_error() {
    let out = invclosed(&["verify", "--field", "3^7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(json_stderr(&out)["error"], "budget_exceeded");

    let out = invclosed(&["verify", "--field", "2^6", "--max-subspaces", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_stderr(&out)["error"], "budget_exceeded");
}

#[test]
fn verify_writes_per_field_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("reports");
    let out = invclosed(&["verify", "--field", "4", "--field", "3^2", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let gf9: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("gf_3_2.json")).unwrap()).unwrap();
    assert_eq!(gf9[0]["found"], 3);
    let gf4: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("gf_2_2.json")).unwrap()).unwrap();
    assert_eq!(gf4[0]["found"], 2);
}

#[test]
fn verify_csv_rows() {
    let out = invclosed(&["verify", "--field", "9", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,f,dim,kind,r,basis");
    assert_eq!(lines[2], "3,2,1,TraceZeroKernel,1,\"0,1\"");
    assert_eq!(lines.len(), 5);
}

#[test]
fn classify_examples() {
    let v = json_stdout(&invclosed(&["classify", "--field", "9", "--basis", "1,0"]));
    assert_eq!(v["kind"], "Subfield");
    assert_eq!(v["r"], 1);
    assert_eq!(v["subspace_polynomial"]["text"], "x^3 + 2x");

    // under x^2 + 1 the root z has trace zero
    let v = json_stdout(&invclosed(&["classify", "--field", "9", "--basis", "0,1"]));
    assert_eq!(v["kind"], "TraceZeroKernel");
    assert_eq!(v["subspace_polynomial"]["text"], "x^3 + x");

    let v = json_stdout(&invclosed(&["classify", "--field", "9", "--basis", "1,1"]));
    assert_eq!(v["kind"], "NotInverseClosed");
    assert_eq!(v["r"], 0);

    // with modulus x^2 + x + 2 the root is no longer trace-zero
    let v = json_stdout(&invclosed(&["classify", "--field", "3^2", "--modulus", "2,1,1", "--basis", "0,1"]));
    assert_eq!(v["field"]["modulus"], serde_json::json!([2, 1, 1]));
    assert_eq!(v["kind"], "NotInverseClosed");
}

#[test]
fn classify_rejects_bad_input() {
    let out = invclosed(&["classify", "--field", "9", "--basis", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_stderr(&out)["error"], "parse");

    let out = invclosed(&["classify", "--field", "9", "--basis", "1,0,0"]);
    assert_eq!(json_stderr(&out)["error"], "invalid_element");

    let out = invclosed(&["classify", "--field", "2^2", "--modulus", "1,0,1", "--basis", "1,0"]);
    assert_eq!(json_stderr(&out)["error"], "reducible_modulus");

    let out = invclosed(&["classify", "--basis", "1,0"]);
    assert_eq!(json_stderr(&out)["error"], "parse");

    let out = invclosed(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_stderr(&out)["error"], "usage");
}

#[test]
fn poly_examples() {
    let v = json_stdout(&invclosed(&["poly", "--field", "9", "--basis", "0,1"]));
    assert_eq!(v["quotient"]["text"], "x^2 + 1");
    assert_eq!(v["self_reciprocal"], true);

    let v = json_stdout(&invclosed(&["poly", "--field", "4", "--basis", "1,0;0,1"]));
    assert_eq!(v["subspace_polynomial"]["text"], "x^4 + x");
    assert_eq!(v["quotient"]["text"], "x^3 + 1");
    assert_eq!(v["self_reciprocal"], true);

    let v = json_stdout(&invclosed(&["poly", "--field", "4", "--basis", ""]));
    assert_eq!(v["subspace_polynomial"]["text"], "x");
    assert_eq!(v["quotient"]["text"], "1");
    assert_eq!(v["self_reciprocal"], true);
}

#[test]
fn hua_examples() {
    let v = json_stdout(&invclosed(&["hua", "--field", "7"]));
    assert_eq!(v[0]["target"], "GF(7)");
    assert_eq!(v[0]["pairs"], 49);
    assert_eq!(v[0]["failures"], 0);

    let v = json_stdout(&invclosed(&["hua", "--field", "2"]));
    assert_eq!(v[0]["pairs"], 4);
    assert_eq!(v[0]["degenerate"], 4);

    let a = invclosed(&["hua", "--rationals", "--trials", "10000", "--seed", "11"]);
    let b = invclosed(&["hua", "--rationals", "--trials", "10000", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_stdout(&a);
    assert_eq!(v[0]["failures"], 0);
    assert_eq!(v[0]["seed"], 11);
}

#[test]
fn enumerate_counts() {
    let out = invclosed(&["enumerate", "--field", "16", "--dim", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 35);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["dim"], 2);
    }
    let out = invclosed(&["enumerate", "--field", "9"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 6);
}

#[test]
fn environment_mirrors_flags() {
    let run = |env: &[(&str, &str)], args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_invclosed"))
            .args(args)
            .env_clear()
            .envs(env.iter().copied())
            .output()
            .unwrap();
        json_stdout(&out)
    };
    let v = run(&[("INVCLOSED_FIELD", "9")], &["verify"]);
    assert_eq!((v[0]["p"].as_u64(), v[0]["f"].as_u64()), (Some(3), Some(2)));
    // the flag wins over the environment
    let v = run(&[("INVCLOSED_FIELD", "9")], &["verify", "--field", "4"]);
    assert_eq!(v[0]["p"], 2);
    let v = run(&[("INVCLOSED_FIELD", "9"), ("INVCLOSED_BASIS", "1,0")], &["classify"]);
    assert_eq!(v["kind"], "Subfield");
}
