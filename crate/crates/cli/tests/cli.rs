use std::process::{Command, Output};

use serde_json::{json, Value};

fn swclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swclass")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--out", "json"]);
    let out = swclass(&full);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, code)
}

const T2: &str = r#"{"coeff":"Z2","gens":[["x",1],["y",1]],"rules":[["x",2,"0"],["y",2,"0"]],"trunc":2}"#;
const QEXT: &str = r#"{"coeff":"Q","gens":[["x",1],["y",1]],"trunc":2}"#;

#[test]
fn k3_torus_report() {
    let (v, code) = json_of(&["scenario", "k3-torus"]);
    assert_eq!(code, 0);
    for (k, want) in [("w_total", json!("1+xy")), ("w1", json!("0")), ("w2", json!("xy")), ("obstructed", json!(true))] {
        assert_eq!(v[k], want, "{k}");
    }
    assert_eq!(v["provenance"]["cross_checks_passed"], json!(true));
    assert!(!v["provenance"]["routes"].as_array().unwrap().is_empty());
    let (v, _) = json_of(&["scenario", "k3-torus", "--params", r#"{"c1":"x*y"}"#]);
    assert_eq!(v["obstructed"], json!(false));
}

#[test]
fn reports_are_deterministic() {
    let a = swclass(&["scenario", "point-divisibility", "--out", "json"]).stdout;
    let b = swclass(&["scenario", "point-divisibility", "--out", "json"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn point_divisibility_trivial_denominators() {
    let (v, code) = json_of(&["scenario", "point-divisibility", "--params", r#"{"d":2,"p":0}"#]);
    assert_eq!(code, 0);
    assert!(v["ledger"]["denominators"].as_array().unwrap().iter().all(|x| x == "1/1"));
    assert_eq!(v["ledger"]["certificate"], json!(true));
}

#[test]
fn sphere_and_torus_scenarios() {
    let (v, code) = json_of(&["scenario", "sphere-divisibility", "--params", r#"{"r":1,"d":3,"p":2}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["ledger"]["lcm"], json!("2/1"));
    assert_eq!(v["ledger"]["p_eff"], json!(1));
    let (v, code) = json_of(&["scenario", "b1-torus-wallcross"]);
    assert_eq!(code, 0);
    assert_eq!(v["jump"], json!("1/1"));
}

#[test]
fn identity_sweeps_pass() {
    let (v, code) = json_of(&["scenario", "identity-sweeps"]);
    assert_eq!(code, 0);
    assert!(v["sweeps"].as_array().unwrap().iter().all(|s| s["counterexamples"] == json!(0)));
}

#[test]
fn ring_eval_examples() {
    let (v, _) = json_of(&["ring", "eval", "(1+x)*(1+x+y)*(1+y)", "--ring", T2]);
    assert_eq!(v["text"], json!("1+xy"));
    let (v, _) = json_of(&["ring", "eval", "x*y + y*x", "--ring", QEXT]);
    assert_eq!(v["text"], json!("0"));
    let nil = r#"{"coeff":"Q","gens":[["x",2]],"rules":[["x",2,"0"]],"trunc":8}"#;
    let (v, _) = json_of(&["ring", "eval", "x^2", "--ring", nil]);
    assert_eq!(v["terms"], json!([]));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(swclass(&["ring", "eval", "z", "--ring", T2]).status.code(), Some(2));
    assert_eq!(swclass(&["ring", "eval", "x"]).status.code(), Some(2));
    assert_eq!(swclass(&["scenario", "sphere-divisibility", "--params", r#"{"r":1}"#]).status.code(), Some(2));
    assert_eq!(swclass(&["scenario", "k3-torus", "--params", r#"{"bogus":1}"#]).status.code(), Some(2));
    assert_eq!(swclass(&["verify", "vzero", "--range", "zz=1"]).status.code(), Some(2));
    assert_eq!(swclass(&["wall", "torus", "--b1", "3", "--matrix", "[]"]).status.code(), Some(2));
}

#[test]
fn sweep_tsv() {
    let out = swclass(&["verify", "vzero", "--range", "u=-2..2", "--range", "j=0..3", "--out", "tsv", "--sequential"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("identity\tu\tj\tlhs\trhs\tpass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5 * 4);
    assert!(rows.iter().all(|r| r.ends_with("\tpass")));
}

#[test]
fn failed_check_exits_one() {
    let ring = r#"{"coeff":"Z","gens":[["a",2],["l",2]],"trunc":4}"#;
    let out = swclass(&["wall", "obs", "--b-plus", "3", "--e-phi", "a", "--e-psi", "a", "--lambda", "l", "--ring", ring]);
    assert_eq!(out.status.code(), Some(1));
    let out = swclass(&["wall", "obs", "--b-plus", "3", "--e-phi", "a", "--e-psi", "a+2*l", "--lambda", "l", "--ring", ring]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn kdiv_commands() {
    let (v, code) = json_of(&["kdiv", "ndmp", "--d", "3", "--m", "2", "--p", "1"]);
    assert_eq!((code, v["closed"].clone(), v["agree"].clone()), (0, json!("7/2"), json!(true)));
    let (v, _) = json_of(&["kdiv", "coeffs", "--p", "1", "--count", "3"]);
    assert_eq!(v["a"], json!(["-1/1", "-1/2", "-1/3"]));
    let (v, _) = json_of(&["kdiv", "ledger", "--d", "4", "--p", "1"]);
    assert!(v["denominators"].as_array().unwrap().contains(&json!("3/1")));
    let ledger = r#"{"ring":{"coeff":"Q","gens":[["u",2]],"trunc":0},"d":4,"b_plus":3,"sw":[[2,"3"]]}"#;
    let (v, _) = json_of(&["kdiv", "swk", "--ledger", ledger, "--m", "2"]);
    // 3 n(4, 2, 1) = 3 (6 + 3/2 + 1/3)
    assert_eq!(v["ch_swk"], json!("47/2"));
}

#[test]
fn classes_and_walls() {
    let ring = r#"{"coeff":"Q","gens":[["c1",2],["c2",4]],"trunc":4}"#;
    let (v, _) = json_of(&["classes", "segre", "--rank", "2", "--chern", "c1", "--chern", "c2", "--ring", ring]);
    assert_eq!(v["segre"], json!(["1", "-c1", "c1^2-c2"]));
    let (v, _) = json_of(&["classes", "todd", "--rank", "1", "--chern", "c1", "--ring", ring]);
    assert_eq!(v["todd"], json!("1+1/2*c1+1/12*c1^2"));
    let (v, _) = json_of(&["wall", "obs", "--b-plus", "2"]);
    assert_eq!(v["obs"], json!("ephi-epsi+lambda"));
    let (v, _) = json_of(&["wall", "torus", "--b1", "2", "--matrix", "[[0,2],[-2,0]]"]);
    assert_eq!(v["jump"], json!("1/1"));
    let (v, code) = json_of(&["verify", "sym-push", "--rank", "3", "--aprime", "1", "--m", "-4"]);
    assert_eq!((code, v["pass"].clone()), (0, json!(true)));
}
