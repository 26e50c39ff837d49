//! End-to-end tests of the binary: exit-code contract, JSON-only stdout,
//! determinism of verify reports, catalog overrides.

use std::path::Path;
use std::process::{Command, Output};

fn conekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(args)
        .env_remove("CONEKIT_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8(out.stdout.clone()).expect("utf-8 stdout");
    assert!(text.ends_with('\n'), "stdout must be newline-terminated");
    serde_json::from_str(text.trim_end()).expect("stdout is a single JSON value")
}

#[test]
fn exit_codes_members_and_nonmembers() {
    let yes = conekit(&["cone-check", "--model", "T4", "--class", "f+G", "--relative", "f"]);
    assert_eq!(yes.status.code(), Some(0));
    let v = stdout_json(&yes);
    assert_eq!(v["member"], serde_json::json!(true));

    let no = conekit(&["cone-check", "--model", "TypeD", "--class", "f+g", "--relative", "f"]);
    assert_eq!(no.status.code(), Some(1));
    let v = stdout_json(&no);
    assert_eq!(v["member"], serde_json::json!(false));
    assert_eq!(v["certificate"]["kind"], serde_json::json!("table-row"));
    assert_eq!(v["certificate"]["tag"], serde_json::json!("TypeD"));
}

#[test]
fn exit_code_usage_errors() {
    for args in [
        vec!["cone-check", "--model", "NoSuchModel", "--class", "f"],
        vec!["cone-check", "--model", "T4", "--class", "zz+f"],
        vec!["cone-check", "--model", "T4", "--class", "f", "--predicate", "relative"],
        vec!["verify", "nonsense"],
        vec!["no-such-verb"],
        vec!["cone-check", "--model", "T4", "--class", "f+G", "--predicate", "symplectic"],
    ] {
        let out = conekit(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        let v = stdout_json(&out);
        assert!(v.get("error").is_some(), "args: {args:?} -> {v}");
    }
}

#[test]
fn verify_reports_are_byte_identical() {
    for suite in ["table", "t2", "snt4"] {
        let a = conekit(&["verify", suite, "--samples", "40", "--seed", "11"]);
        let b = conekit(&["verify", suite, "--samples", "40", "--seed", "11"]);
        assert_eq!(a.status.code(), Some(0), "suite {suite} failed");
        assert_eq!(a.stdout, b.stdout, "suite {suite} not deterministic");
    }
}

#[test]
fn all_commands_are_byte_deterministic() {
    for args in [
        vec!["catalog-list"],
        vec!["catalog-show", "--model", "T2xSigma(4)"],
        vec!["lattice-sig", "--model", "E1"],
        vec!["cone-check", "--model", "T4", "--class", "f+G", "--relative", "f"],
    ] {
        let a = conekit(&args);
        let b = conekit(&args);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
    }
}

#[test]
fn sum_build_and_split_round() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("t4t4.json");
    std::fs::write(
        &spec,
        r#"{"x":"T4","y":"T4","v_in_x":"f","v_in_y":"f","v_genus":1,"h1_injects_into_y":true}"#,
    )
    .unwrap();
    let spec_str = spec.to_str().unwrap();

    let built = conekit(&["sum-build", "--spec", spec_str]);
    assert_eq!(built.status.code(), Some(0));
    let v = stdout_json(&built);
    assert_eq!(v["model"]["lattice"]["rank"], serde_json::json!(10));
    assert_eq!(v["goodness"]["good"], serde_json::json!(true));
    assert_eq!(v["basis_roles"][0]["role"], serde_json::json!("F"));
    assert_eq!(v["basis_roles"][1]["role"], serde_json::json!("Gamma"));

    let split = conekit(&["sum-split", "--spec", spec_str, "--class", "2F+G", "--rho", "2/1"]);
    assert_eq!(split.status.code(), Some(0));
    let v = stdout_json(&split);
    assert_eq!(v["alpha_x"]["expr"], serde_json::json!("f + G"));
    assert_eq!(v["alpha_y"]["expr"], serde_json::json!("f + G"));
    assert_eq!(v["alpha_x"]["square"], serde_json::json!([2, 1]));

    // out-of-range rho is a validation error
    let bad = conekit(&["sum-split", "--spec", spec_str, "--class", "2F+G", "--rho", "9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn catalog_show_and_override_dir() {
    let shown = conekit(&["catalog-show", "--model", "E1"]);
    assert_eq!(shown.status.code(), Some(0));
    let v = stdout_json(&shown);
    assert_eq!(v["model"]["b_plus"], serde_json::json!(1));
    assert!(v["provenance_notes"].is_string());

    // an override directory shadows the builtin, via flag and via env
    let dir = tempfile::tempdir().unwrap();
    let model = v["model"].clone();
    let mut modified = model.clone();
    modified["name"] = serde_json::json!("E1-mine");
    std::fs::write(dir.path().join("E1.json"), modified.to_string()).unwrap();

    let flagged = conekit(&[
        "catalog-show",
        "--model",
        "E1",
        "--catalog-dir",
        dir.path().to_str().unwrap(),
    ]);
    let v = stdout_json(&flagged);
    assert_eq!(v["model"]["name"], serde_json::json!("E1-mine"));
    assert!(v["provenance_notes"].is_null());

    let by_env = Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(["catalog-show", "--model", "E1"])
        .env("CONEKIT_CATALOG", dir.path())
        .output()
        .unwrap();
    let v = stdout_json(&by_env);
    assert_eq!(v["model"]["name"], serde_json::json!("E1-mine"));
}

#[test]
fn cone_check_accepts_model_files() {
    let dir = tempfile::tempdir().unwrap();
    let shown = conekit(&["catalog-show", "--model", "T4"]);
    let model = stdout_json(&shown)["model"].clone();
    let path = dir.path().join("mine.json");
    std::fs::write(&path, model.to_string()).unwrap();
    let out = conekit(&[
        "cone-check", "--model", path.to_str().unwrap(), "--class", "f+G", "--relative", "f",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["member"], serde_json::json!(true));
}

#[test]
fn lattice_sig_accepts_bare_lattice_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    std::fs::write(&path, r#"{"rank":2,"labels":["a","b"],"gram":[[0,1],[1,0]]}"#).unwrap();
    let out = conekit(&["lattice-sig", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["b_plus"], serde_json::json!(1));
    assert_eq!(v["b_minus"], serde_json::json!(1));
    assert!(v["name"].is_null());
}

#[test]
fn cone_check_predicates() {
    // conjecture cone on the genus-2 product: K = 2F
    let yes = conekit(&[
        "cone-check", "--model", "T2xSigma(2)", "--class", "2f+G", "--predicate", "conjecture",
    ]);
    assert_eq!(yes.status.code(), Some(0));
    let no = conekit(&[
        "cone-check", "--model", "T2xSigma(2)", "--class", "x1+x2", "--predicate", "conjecture",
    ]);
    assert_eq!(no.status.code(), Some(1));

    // symplectic (b+ = 1) on E1 with a class pairing zero against e1
    let out = conekit(&[
        "cone-check", "--model", "E1", "--class",
        "3h-e2-e3-e4-e5-e6-e7-e8-e9", "--predicate", "symplectic",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["scope"], serde_json::json!("stored-exceptional-list"));

    // default predicate is positive without --relative
    let pos = conekit(&["cone-check", "--model", "K3", "--class", "f+g"]);
    assert_eq!(pos.status.code(), Some(0));
    let v = stdout_json(&pos);
    assert_eq!(v["predicate"], serde_json::json!("positive-cone"));
}

#[test]
fn stdout_is_json_only() {
    // even usage errors keep stdout machine-readable
    let out = conekit(&["cone-check", "--model", "T4"]);
    assert_eq!(out.status.code(), Some(2));
    stdout_json(&out);
    assert!(Path::new(env!("CARGO_BIN_EXE_conekit")).exists());
}
