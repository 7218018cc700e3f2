use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn swanlab(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_swanlab"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let json = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().expect("exit code"), json, stdout)
}

#[test]
fn conductor_of_pi_minus_two_over_gf3() {
    let (code, v, _) = swanlab(&[
        "conductor",
        "-p",
        "3",
        "-q",
        "3",
        "--residue",
        "perfect",
        "--witt",
        r#"["pi^-2"]"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "swanlab/1");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["sw"], 2);
    assert_eq!(v["rsw"]["alpha"], "0");
    assert_eq!(v["rsw"]["beta"], "2");
    assert_eq!(v["rsw"]["n"], 2);
    assert_eq!(v["sw_mod"], 2);
    assert_eq!(v["rsw_mod"]["beta"], "2");
    assert_eq!(v["log_slope"], 2);
    assert_eq!(v["slope"], 3);
    assert_eq!(v["char_point"]["beta"], "1");
}

#[test]
fn filtration_table_of_y_pi_minus_two() {
    let (code, v, _) = swanlab(&[
        "filtration",
        "--witt",
        r#"["y*pi^-2"]"#,
        "--n-range",
        "0..3",
        "-p",
        "2",
        "--residue",
        "rational(y)",
    ]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    let fil: Vec<bool> = rows.iter().map(|r| r["fil"].as_bool().unwrap()).collect();
    let fil_prime: Vec<bool> = rows
        .iter()
        .map(|r| r["fil_prime"].as_bool().unwrap())
        .collect();
    assert_eq!(fil, [false, false, true, true]);
    assert_eq!(fil_prime, [false, true, true, true]);
}

#[test]
fn out_of_range_outputs_exit_two_with_status() {
    let args = [
        "conductor",
        "-p",
        "2",
        "--residue",
        "rational(y)",
        "--witt",
        r#"["y*pi^-2"]"#,
    ];
    let (code, v, _) = swanlab(&args);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "out_of_theorem_range");
    assert_eq!(v["notes"].as_array().unwrap().len(), 2);
    assert_eq!(v["sw"], 2);
    assert_eq!(v["sw_mod"], 1);
    assert!(v["slope"].is_null());

    let mut narrow = args.to_vec();
    narrow.extend(["--outputs", "sw,rsw,sw_mod"]);
    let (code, v, _) = swanlab(&narrow);
    assert_eq!(code, 0);
    assert!(v.get("slope").is_none());
}

#[test]
fn trivial_character() {
    let (code, v, _) = swanlab(&[
        "conductor",
        "-p",
        "2",
        "--witt",
        r#"["pi^-4 + pi^-1"]"#,
        "--outputs",
        "sw,rsw",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["sw"], 0);
    assert!(v["rsw"].is_null());
    assert_eq!(v["reduced"][0], "0");

    let (code, v, _) = swanlab(&["conductor", "-p", "2", "--witt", r#"["pi^-4 + pi^-1"]"#]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "out_of_theorem_range");
}

#[test]
fn parse_and_config_errors_exit_one() {
    let (code, v, _) = swanlab(&["conductor", "-p", "2", "--witt", r#"["pi^-"]"#]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    let (code, _, _) = swanlab(&["conductor", "-p", "4", "--witt", r#"["pi^-1"]"#]);
    assert_eq!(code, 1);
    let (code, _, _) = swanlab(&[
        "conductor",
        "-p",
        "2",
        "--witt",
        r#"["0","0","0","0","pi^-1"]"#,
    ]);
    assert_eq!(code, 1);
}

#[test]
fn budget_exceeded_exits_three_with_bound() {
    let (code, v, _) = swanlab(&[
        "reduce",
        "-p",
        "2",
        "--witt",
        r#"["pi^-4 + pi^-1"]"#,
        "--max-iterations",
        "1",
        "--search-depth",
        "0",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "budget_exceeded");
    assert_eq!(v["sw_upper_bound"], 2);
}

#[test]
fn reduce_command() {
    let (code, v, _) = swanlab(&["reduce", "-p", "2", "--witt", r#"["pi^-2"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["sw"], 1);
    assert_eq!(v["reduced"][0], "pi^-1");
}

#[test]
fn normalform_command() {
    let (code, v, _) = swanlab(&[
        "normalform",
        "-p",
        "3",
        "--residue",
        "rational(y)",
        "--n",
        "3",
        "--alpha",
        "1",
        "--beta",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"]["layers"].as_array().unwrap().len(), 1);

    let (code, v, _) = swanlab(&[
        "normalform",
        "-p",
        "2",
        "--residue",
        "rational(y)",
        "--n",
        "2",
        "--alpha",
        "y",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "not_in_bgr");

    let (code, v, _) = swanlab(&[
        "normalform",
        "-p",
        "2",
        "--n",
        "1",
        "--variant",
        "plain",
        "--beta",
        "1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "unsupported_range");
}

#[test]
fn witt_operations() {
    let w = r#"["pi^-1","0"]"#;
    let (_, v, _) = swanlab(&["witt", "-p", "2", "--op", "add", "--witt", w, "--rhs", w]);
    assert_eq!(v["result"], serde_json::json!(["0", "pi^-2"]));
    let (_, v, _) = swanlab(&["witt", "-p", "2", "--op", "frobenius", "--witt", w]);
    assert_eq!(v["result"], serde_json::json!(["pi^-2", "0"]));
    let (_, v, _) = swanlab(&["witt", "-p", "2", "--op", "v", "--witt", w]);
    assert_eq!(v["result"], serde_json::json!(["0", "pi^-1", "0"]));
    let (_, v, _) = swanlab(&["witt", "-p", "3", "--op", "neg", "--witt", r#"["pi^-1"]"#]);
    assert_eq!(v["result"], serde_json::json!(["2*pi^-1"]));
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "conductor",
        "-p",
        "3",
        "--residue",
        "rational(y)",
        "--witt",
        r#"["y*pi^-3", "(y+1)/y*pi^-1"]"#,
    ];
    let (_, _, first) = swanlab(&args);
    let (_, _, second) = swanlab(&args);
    assert_eq!(first, second);
}

#[test]
fn batch_preserves_order() {
    let jobs = r#"[
        {"field": {"p": 3, "q": 3, "residue": "perfect"}, "witt": ["pi^-2"], "outputs": ["sw", "slope"]},
        {"field": {"p": 2, "residue": "rational(y)"}, "witt": ["y*pi^-2"], "outputs": ["sw", "sw_mod"]},
        {"field": {"p": 2}, "witt_length": 2, "witt": ["pi^-1", "0"]},
        {"field": {"p": 2}, "witt": ["pi^-"]}
    ]"#;
    let mut child = Command::new(env!("CARGO_BIN_EXE_swanlab"))
        .args(["batch", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(jobs.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = v["results"].as_array().unwrap();
    let sws: Vec<Value> = results.iter().map(|r| r["sw"].clone()).collect();
    assert_eq!(sws[..3], [Value::from(2), Value::from(2), Value::from(2)]);
    assert_eq!(results[0]["slope"], 3);
    assert_eq!(results[1]["sw_mod"], 1);
    assert_eq!(results[2]["rsw"]["beta"], "1");
    assert_eq!(results[3]["status"], "error");
}

#[test]
fn selftest_quick_suite() {
    let (code, v, _) = swanlab(&["selftest", "--quick", "--suite", "field,differentials"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 5);
}
