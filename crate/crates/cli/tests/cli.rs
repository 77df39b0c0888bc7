use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    (
        out.status.code().unwrap(),
        serde_json::from_slice(&out.stdout).unwrap_or(Value::Null),
    )
}

#[test]
fn image_chi_of_a1() {
    let (code, r) = json(&["image-chi", "A_k", "--param", "k=1"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "image-chi");
    assert_eq!(r["result"]["mu_i"], 1);
    assert_eq!(r["result"]["chi_mf"], -1);
    assert_eq!(r["result"]["consistency"], true);
    assert_eq!(r["result"]["expected"]["match"], true);
}

#[test]
fn image_chi_of_inline_germ() {
    let germ = r#"{"n": 3, "components": ["x", "y", "z^2", "z*(z^2 + x^3 + y^4)"]}"#;
    let (code, r) = json(&["image-chi", germ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mu_i"], 6);
    assert_eq!(r["result"]["chi_mf"], -16);
    assert!(r["result"].get("expected").is_none());
}

#[test]
fn table_subset_exits_zero() {
    let (code, r) = json(&["table1", "--rows", "A_k,B_k,F_4", "--param", "k=2"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["A_2", "B_2", "F_4"]);
}

#[test]
fn table_mismatch_exits_one() {
    // the tabulated Euler characteristic of this row disagrees with its own
    // closed-form formula
    let (code, r) = json(&["table1", "--rows", "I"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["mismatches"], serde_json::json!(["I"]));
    assert_eq!(r["result"]["rows"][0]["mu_i"], 6);
    assert_eq!(r["result"]["rows"][0]["consistency"], true);
}

#[test]
fn strat_euler_of_nothing_is_zero() {
    let out = run(&["strat-euler", "[]"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");
    let (_, r) = json(&[
        "strat-euler",
        r#"[{"name": "C", "chi_pair": 3, "chi_tmf_reduced": -2}]"#,
    ]);
    assert_eq!(r["result"]["chi_difference"], -6);
}

#[test]
fn milnor_with_inferred_variables() {
    let (code, r) = json(&["milnor", "x^3 + y^4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mu"], 6);
    assert_eq!(r["inputs"]["vars"], serde_json::json!(["x", "y"]));
}

#[test]
fn icis_and_multiple_points() {
    let (code, r) = json(&["icis", r#"{"vars": ["x", "y"], "gens": ["x^2", "y^3"]}"#]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["mu"], 5);
    let (code, r) = json(&["mps", "A_2", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["beta"], 1);
    assert_eq!(r["result"]["spaces"][0]["name"], "D^2");
    let (code, r) = json(&["mps", "A_2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["tuple"]["beta4"], 0);
}

#[test]
fn zariski_and_equidim() {
    let (code, r) = json(&[
        "zariski", "--mu-g", "2", "--mu-f", "1", "--n", "3", "--mu-I-f", "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["odd_n_defect"], 0);
    let (code, r) = json(&["equidim", "--phi", "x^2 + y^2", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["agree"], true);
    assert_eq!(r["result"]["discriminant_ratio"], "1");
}

#[test]
fn family_defaults() {
    let unfolding = r#"{"unfolding": true, "vars": ["x", "y", "z", "t"],
        "components": ["x", "y", "z^2", "z*(z^2 + x^2 + y^2) + t*x*z"]}"#;
    let (code, r) = json(&["family", unfolding]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["samples"].as_array().unwrap().len(), 4);
    assert_eq!(
        r["result"]["scope"],
        "numerical hypotheses (computable part)"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["image-chi", "Z_9"],
        vec!["image-chi", "A_k"],
        vec!["icis", "{not json"],
        vec!["milnor", "x^^2"],
        vec!["table1", "--rows", "nonsense"],
        vec!["--field", "fp:12", "milnor", "x^2"],
        vec!["zariski", "--mu-g", "1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computational_errors_exit_one() {
    let out = run(&["milnor", "x^2", "--vars", "x,y", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["error"]["kind"], "computation");
    // a germ whose double point space is not an ICIS
    let out = run(&[
        "image-chi",
        r#"{"n": 3, "components": ["x", "y", "z^2", "z^3"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = ["image-chi", "S_{1,2}", "--pretty", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let t1 = run(&["table1", "--rows", "A_1,A_2,E_6,P_2", "--json"]);
    let t2 = run(&["table1", "--rows", "A_1,A_2,E_6,P_2", "--json"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn prime_field_prints_banner() {
    let out = run(&["--field", "fp:32003", "milnor", "x^5 + y^2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("probabilistic"));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "mu = 4");
}
