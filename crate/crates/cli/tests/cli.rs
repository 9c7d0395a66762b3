use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use reeskit_core::families::{lambda_kappa_family, lambda_kappa_fiber};
use reeskit_core::mhs::alpha_mhs;
use reeskit_core::sample::{random_mhs, seeded};
use reeskit_core::{Scalar, TrifilteredSpace};

fn reeskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeskit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn sc(s: &str) -> Scalar {
    s.parse().unwrap()
}

#[test]
fn invariants_of_lambda_kappa() {
    let dir = TempDir::new().unwrap();
    let distinct = write(
        &dir,
        "distinct.json",
        &serde_json::to_value(lambda_kappa_fiber(&sc("1"), &sc("i"))).unwrap(),
    );
    let equal = write(
        &dir,
        "equal.json",
        &serde_json::to_value(lambda_kappa_fiber(&sc("i"), &sc("i"))).unwrap(),
    );
    let report = stdout_json(&reeskit(&["invariants", "--in", &distinct]));
    assert_eq!(report["c2"], json!(1));
    assert_eq!(report["rank"], json!(2));
    assert_eq!(report["c1"], json!(0));
    let report = stdout_json(&reeskit(&["invariants", "--in", &equal]));
    assert_eq!(report["c2"], json!(0));
}

#[test]
fn curve_alpha_on_the_four_point_curve() {
    let dir = TempDir::new().unwrap();
    let cfg = |q: [f64; 2]| json!({ "genus": 0, "punctures": [[0.0, 0.0], [1.0, 0.0]], "pairs": [["inf", q]] });
    let half = write(&dir, "half.json", &cfg([0.5, 0.0]));
    let two = write(&dir, "two.json", &cfg([2.0, 0.0]));
    assert_eq!(
        stdout_json(&reeskit(&["curve-alpha", "--in", &half]))["alpha"],
        json!(0)
    );
    assert_eq!(stdout_json(&reeskit(&["curve-alpha", "--in", &two]))["alpha"], json!(1));
    let near = write(&dir, "near.json", &cfg([0.5 + 1e-6, 0.0]));
    assert_eq!(
        stdout_json(&reeskit(&["curve-alpha", "--in", &near]))["alpha"],
        json!(1)
    );
    assert_eq!(
        stdout_json(&reeskit(&["curve-alpha", "--in", &near, "--tol", "1e-3"]))["alpha"],
        json!(0)
    );
    assert_eq!(
        reeskit(&["curve-alpha", "--in", &near, "--tol", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn non_real_weight_is_a_domain_error_naming_the_level() {
    let dir = TempDir::new().unwrap();
    let bad = json!({
        "ambient_dim": 2,
        "W": { "ambient_dim": 2, "levels": [
            { "index": -1, "vectors": [["1", "i"]] },
            { "index": 1, "vectors": [] }
        ]},
        "F": { "ambient_dim": 2, "levels": [
            { "index": 1, "vectors": [["1", "0"]] },
            { "index": 2, "vectors": [] }
        ]}
    });
    let path = write(&dir, "bad.json", &bad);
    let out = reeskit(&["check-mhs", "--in", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], json!("not_real"));
    assert!(err["error"]["detail"]["level"].is_i64());
}

#[test]
fn non_opposed_alpha_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "tri.json",
        &serde_json::to_value(TrifilteredSpace::rank_one(1, 0, 0)).unwrap(),
    );
    let out = reeskit(&["alpha", "--in", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], json!("not_opposed"));
}

#[test]
fn alpha_detects_the_input_kind() {
    let dir = TempDir::new().unwrap();
    let mut rng = seeded(7);
    for i in 0..4 {
        let h = random_mhs(&mut rng, 4);
        let as_mhs = write(&dir, &format!("m{i}.json"), &serde_json::to_value(&h).unwrap());
        let as_tri = write(&dir, &format!("t{i}.json"), &serde_json::to_value(h.triple()).unwrap());
        let expected = json!(alpha_mhs(&h).unwrap());
        let a = stdout_json(&reeskit(&["alpha", "--in", &as_mhs]));
        assert_eq!((&a["alpha"], &a["input"]), (&expected, &json!("mhs")));
        let b = stdout_json(&reeskit(&["alpha", "--in", &as_tri]));
        assert_eq!((&b["alpha"], &b["input"]), (&expected, &json!("trifiltered")));
    }
}

#[test]
fn check_mhs_and_deligne_split_agree() {
    let dir = TempDir::new().unwrap();
    let mut rng = seeded(11);
    for i in 0..4 {
        let h = random_mhs(&mut rng, 5);
        let path = write(&dir, &format!("h{i}.json"), &serde_json::to_value(&h).unwrap());
        let check = stdout_json(&reeskit(&["check-mhs", "--in", &path]));
        assert_eq!(check["valid"], json!(true));
        let split = stdout_json(&reeskit(&["deligne-split", "--in", &path]));
        assert_eq!(check["r_split"], split["r_split"]);
        let pieces = split["pieces"].as_array().unwrap();
        let total: u64 = pieces.iter().map(|p| p["dim"].as_u64().unwrap()).sum();
        assert_eq!(total as usize, h.ambient_dim());
        // Hodge numbers are the dimensions of the Deligne pieces.
        let mut from_pieces: Vec<Value> = pieces.iter().map(|p| json!([p["p"], p["q"], p["dim"]])).collect();
        from_pieces.sort_by_key(|v| v.to_string());
        let mut hodge: Vec<Value> = check["hodge_numbers"].as_array().unwrap().clone();
        hodge.sort_by_key(|v| v.to_string());
        assert_eq!(from_pieces, hodge);
    }
}

#[test]
fn output_is_deterministic_and_reparses() {
    let dir = TempDir::new().unwrap();
    let h = random_mhs(&mut seeded(3), 5);
    let path = write(&dir, "h.json", &serde_json::to_value(&h).unwrap());
    for cmd in ["invariants", "check-mhs", "deligne-split", "alpha"] {
        let a = reeskit(&[cmd, "--in", &path]);
        let b = reeskit(&[cmd, "--in", &path]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd} output differs between runs");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(
            serde_json::from_str::<Value>(&serde_json::to_string(&v).unwrap()).unwrap(),
            v
        );
    }
}

#[test]
fn stratify_writes_json_and_csv() {
    let dir = TempDir::new().unwrap();
    let fam = lambda_kappa_family(&[sc("0"), sc("1"), sc("i")]);
    let path = write(&dir, "fam.json", &serde_json::to_value(&fam).unwrap());
    let out_json = dir.path().join("strata.json");
    let out_csv = dir.path().join("strata.csv");
    let run = |extra: &[&str], out: &Path| {
        let mut args = vec!["stratify", "--in", &path, "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = reeskit(&args);
        assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
        fs::read_to_string(out).unwrap()
    };
    let report: Value = serde_json::from_str(&run(&[], &out_json)).unwrap();
    assert_eq!(report["strata"]["alphas"].as_array().unwrap().len(), 9);
    let csv = run(&["--format", "csv"], &out_csv);
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(
        header.starts_with("label,lambda.re,lambda.im,kappa.re,kappa.im,alpha"),
        "{header}"
    );
    assert_eq!(lines.count(), 9);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    let out = reeskit(&["invariants", "--in", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], json!("malformed_input"));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        reeskit(&["alpha", "--in", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let wrong_shape = write(&dir, "shape.json", &json!({ "W": 3, "F": [] }));
    assert_eq!(reeskit(&["check-mhs", "--in", &wrong_shape]).status.code(), Some(2));
    assert_eq!(
        reeskit(&["alpha", "--format", "csv", "--in", &wrong_shape])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(reeskit(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = reeskit(&["selftest", "--seed", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3/3 passed"), "{text}");
    let rows = stdout_json(&reeskit(&["selftest", "--format", "json"]));
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == json!(true)));
}
