//! End-to-end checks of the binary: exit-code contract, JSON schema
//! versioning, text/JSON agreement on integer fields, and reproducibility
//! from flags plus seed alone.

use std::process::Command;

fn chtrace() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chtrace"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = chtrace().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn predict_text_contains_key_values() {
    let (code, stdout, _) = run(&["predict", "--type", "A2", "--ell", "5"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("degree_U"));
    assert!(stdout.contains("= 5^3 = 125"));
    assert!(stdout.contains("tensor_mult"));
    assert!(stdout.contains("= 5^1 = 5"));
}

#[test]
fn predict_invalid_ell_exits_one_with_reason() {
    let (code, _, stderr) = run(&["predict", "--type", "G2", "--ell", "9"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("coprime to 3"), "stderr: {stderr}");
    let (code, _, _) = run(&["predict", "--type", "A2", "--ell", "4"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["predict", "--type"]);
    assert_eq!(code, 2);
}

#[test]
fn text_and_json_agree_on_integers() {
    let (code, text, _) = run(&["predict", "--type", "B3", "--ell", "7"]);
    assert_eq!(code, 0);
    let (code, json_out, _) = run(&["predict", "--type", "B3", "--ell", "7", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    assert_eq!(v["schema"], "chtrace/1");
    let table = &v["table"];
    for (name, _, value) in [
        ("degree_U", 0, table["degree_u"]["value"].as_str().unwrap()),
        (
            "tensor_mult",
            0,
            table["tensor_mult"]["value"].as_str().unwrap(),
        ),
        (
            "branch_count",
            0,
            table["branch_count"]["value"].as_str().unwrap(),
        ),
    ] {
        assert!(
            text.contains(&format!("= {value}")),
            "{name} value {value} missing from text output"
        );
    }
}

#[test]
fn cg_json_report_is_schema_versioned_and_deterministic() {
    let args = [
        "sl2", "cg", "--ell", "3", "--trials", "3", "--seed", "11", "--json",
    ];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    let (_, b, _) = run(&args);
    let va: serde_json::Value = serde_json::from_str(&a).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(va["schema"], "chtrace/1");
    assert_eq!(va["verdict"]["pass_count"], 3);
    // integer fields are bit-for-bit reproducible across runs
    assert_eq!(
        va["verdict"]["trials"][0]["seed"],
        vb["verdict"]["trials"][0]["seed"]
    );
    assert_eq!(va["verdict"]["pass_count"], vb["verdict"]["pass_count"]);
}

#[test]
fn cg_with_jobs_matches_serial_run() {
    let serial = run(&[
        "sl2", "cg", "--ell", "3", "--trials", "4", "--seed", "3", "--json",
    ]);
    let parallel = run(&[
        "sl2", "cg", "--ell", "3", "--trials", "4", "--seed", "3", "--jobs", "4", "--json",
    ]);
    assert_eq!(serial.0, 0);
    assert_eq!(parallel.0, 0);
    let a: serde_json::Value = serde_json::from_str(&serial.1).unwrap();
    let b: serde_json::Value = serde_json::from_str(&parallel.1).unwrap();
    assert_eq!(a["verdict"]["pass_count"], b["verdict"]["pass_count"]);
    let seeds = |v: &serde_json::Value| -> Vec<u64> {
        v["verdict"]["trials"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["seed"].as_u64().unwrap())
            .collect()
    };
    assert_eq!(
        seeds(&a),
        seeds(&b),
        "seed-sorted output must not depend on schedule"
    );
}

#[test]
fn algebra_pipeline_on_sample_file() {
    let dir = std::env::temp_dir().join("chtrace_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m2_scaled.json");
    // M₂ with doubled trace: ch degree 4, blocks {(2,2)}, reduce → r = 2
    std::fs::write(
        &path,
        r#"{
            "dim": 4,
            "labels": ["e11","e12","e21","e22"],
            "unit": [1,0,0,1],
            "trace": [2,0,0,2],
            "ch_degree": 4,
            "structure": [
                [0,0,0,1],[0,1,1,1],[1,2,0,1],[1,3,1,1],
                [2,0,2,1],[2,1,3,1],[3,2,2,1],[3,3,3,1]
            ],
            "field": "Q"
        }"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["algebra", "check", "--file", p]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["algebra", "radical", "--file", p]);
    assert_eq!(code, 0);
    assert!(out.contains("radical dimension: 0"));
    let (code, out, _) = run(&["algebra", "blocks", "--file", p, "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["blocks"], serde_json::json!([[2, 2]]));
    let (code, out, _) = run(&["algebra", "reduce", "--file", p]);
    assert_eq!(code, 0);
    assert!(out.contains("trace = 2 x reduced trace"), "{out}");
}

#[test]
fn chcheck_vanishing_and_nonvanishing() {
    let (code, out, _) = run(&[
        "chcheck", "--n", "2", "--size", "2", "--trials", "30", "--seed", "7",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("30 vanished"));
    // 3×3 tuples: CH(2) generically nonzero
    let (code, _, _) = run(&[
        "chcheck", "--n", "2", "--size", "3", "--trials", "10", "--seed", "7",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn sl2_build_round_trip_through_file() {
    let dir = std::env::temp_dir().join("chtrace_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("rep.json");
    let (code, _, _) = run(&[
        "sl2",
        "build",
        "--ell",
        "3",
        "--chi",
        "1,1,1",
        "--branch",
        "1",
        "--out-file",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["schema"], "chtrace/1");
    assert_eq!(v["ell"], 3);
    assert_eq!(v["E"].as_array().unwrap().len(), 3);
}

#[test]
fn tolerance_env_override_is_read() {
    // an absurdly strict cluster gap forces the CG run inconclusive,
    // which exits 3 without --allow-inconclusive and 0 with it
    let out = chtrace()
        .args(["sl2", "cg", "--ell", "3", "--trials", "1", "--seed", "1"])
        .env("CHTRACE_TOL_CLUSTER", "10.0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = chtrace()
        .args([
            "sl2",
            "cg",
            "--ell",
            "3",
            "--trials",
            "1",
            "--seed",
            "1",
            "--allow-inconclusive",
        ])
        .env("CHTRACE_TOL_CLUSTER", "10.0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn matinv_reports_probe_and_expression() {
    let dir = std::env::temp_dir().join("chtrace_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tuple.json");
    std::fs::write(&path, r#"[ [[1,0],[0,2]], [[0,1],[1,0]] ]"#).unwrap();
    let (code, out, _) = run(&[
        "matinv",
        "--tuple",
        path.to_str().unwrap(),
        "--expr",
        "(sub (tr (mul x1 x2)) (tr (mul x2 x1)))",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["artin_semisimple"], true);
    assert_eq!(v["discriminant_nonzero"], true);
    assert!(v["expr_result"].as_str().unwrap().contains("scalar 0"));
}
