use std::process::Command;

use fgl_thh::cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("fgl-thh").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = cli(&a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn bp_sigma_text() {
    let out = cli(&["sigma", "--flavor", "bp", "--prime", "2", "--max-n", "3", "--format", "text"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l == "sigma(v_1) = 2*lambda_1"), "{}", out.stdout);
}

#[test]
fn moving_table_json() {
    let v = json(&["cohomology", "--flavor", "mu-moving", "--max-degree", "10"]);
    assert_eq!(v["schema"], "fgl-thh/1");
    assert_eq!(v["command"], "cohomology");
    let degrees = v["result"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 11);
    let g9 = &degrees[9]["group"];
    assert_eq!(g9["free_rank"], 0);
    assert_eq!(ints(&g9["invariant_factors"]), [2, 240]);
    assert_eq!(ints(&g9["primary"]), [2, 16, 3, 5]);
    assert_eq!(g9["generators"].as_array().unwrap().len(), 2);
    let g5 = &degrees[5]["group"];
    assert_eq!((g5["free_rank"].clone(), ints(&g5["invariant_factors"])), (Value::from(0), vec![12]));
    assert_eq!(degrees[0]["group"]["free_rank"], 1);
}

#[test]
fn sigma_tex_rows() {
    let v = json(&["sigma"]);
    let rows = v["result"]["sections"][0]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["tex"], "\\sigma(x_1) = -2\\lambda'_1");
    assert_eq!(rows[0]["value"]["terms"][0]["coeff"], -2);
    let tex = cli(&["sigma", "--format", "tex"]).stdout;
    assert!(tex.contains("\\begin{align*}") && tex.contains("\\sigma(x_1) &= -2\\lambda'_1"));
}

#[test]
fn split_sigma_has_products() {
    let out = cli(&["sigma", "--flavor", "mu-split"]).stdout;
    assert!(out.contains("sigma(e_3) = e_1*e_2"));
    assert!(out.contains("sigma(e_4) = 2*e_1*e_3"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--flavor", "mu-split", "--max-degree", "10"][..],
        &["verify", "--flavor", "mu-moving"],
        &["verify", "--flavor", "bp", "--prime", "3"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
        assert!(!out.stdout.contains("FAIL"));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sigma", "--flavor", "bp"][..],
        &["sigma", "--flavor", "bp", "--prime", "4"],
        &["sigma", "--flavor", "bp", "--prime", "7"],
        &["cohomology", "--max-degree", "10", "--truncation", "3"],
        &["cohomology", "--flavor", "bp", "--prime", "2", "--max-degree", "11"],
        &["bar-tor", "--max-weight", "9"],
        &["bar-tor", "--algebra", "t"],
        &["frobnicate"],
        &["sigma", "--format", "yaml"],
        &[],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn large_prime_needs_flag() {
    let out = cli(&["sigma", "--flavor", "bp", "--prime", "7", "--max-n", "2", "--unsafe-large-prime"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("sigma(v_1) = 7*lambda_1"));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let cases: [&[&str]; 5] = [
        &["cohomology", "--flavor", "mu-split", "--max-degree", "10", "--matrices"],
        &["structure-maps"],
        &["structure-maps", "--flavor", "bp", "--prime", "3", "--max-n", "3"],
        &["de-rham", "--compare", "--max-degree", "8"],
        &["bar-tor", "--algebra", "b", "--max-weight", "5"],
    ];
    for args in cases {
        for format in ["json", "tex", "text"] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            let (x, y) = (cli(&a), cli(&a));
            assert_eq!(x.code, 0, "{a:?}: {}", x.stderr);
            assert_eq!(x.stdout, y.stdout, "{a:?}");
            if format == "json" {
                let v: Value = serde_json::from_str(&x.stdout).unwrap();
                assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", x.stdout);
            }
        }
    }
}

#[test]
fn empty_table_is_a_document() {
    let v = json(&["sigma", "--max-n", "0"]);
    assert_eq!(v["result"]["sections"], Value::Array(vec![]));
    assert_eq!(cli(&["structure-maps", "--max-n", "0"]).code, 0);
}

#[test]
fn structure_maps_text() {
    let out = cli(&["structure-maps"]).stdout;
    for line in [
        "eta_R(x_1) = x_1 + 2*b_1",
        "c_1 = -b_1",
        "x_1 = -2*m_1",
        "chi(b_2) = 2*b_1^2 - b_2",
        "psi(b_2) = b_2 (x) 1 + 2*b_1 (x) b_1 + 1 (x) b_2",
        "h(x_2) = 4*c_1^2 - 3*c_2",
    ] {
        assert!(out.lines().any(|l| l == line), "missing {line}");
    }
    let bp = cli(&["structure-maps", "--flavor", "bp", "--prime", "2", "--max-n", "3"]).stdout;
    assert!(bp.contains("2^2*l_2 = v_1^3 + 2*v_2"));
    assert!(bp.contains("eta_R(v_1) = v_1 + 2*t_1"));
}

#[test]
fn bp_tables_by_prime() {
    let v = json(&["cohomology", "--flavor", "bp", "--prime", "2"]);
    let d = v["result"]["degrees"].as_array().unwrap();
    assert_eq!(ints(&d[9]["group"]["invariant_factors"]), [16]);
    assert_eq!(d[9]["group"]["generators"][0]["text"], "v_2*lambda_1 + v_1*lambda_2");
    let v = json(&["cohomology", "--flavor", "bp", "--prime", "3"]);
    let d = v["result"]["degrees"].as_array().unwrap();
    assert_eq!(d.len(), 25);
    assert_eq!(ints(&d[21]["group"]["invariant_factors"]), [9]);
}

#[test]
fn de_rham_and_bar_tor() {
    let out = cli(&["de-rham", "--max-degree", "9"]).stdout;
    assert!(out.contains("H^9 = Z/4{x_1^3*dx_1}"));
    let out = cli(&["de-rham", "--weights", "1,2", "--max-degree", "7"]);
    assert_eq!(out.code, 0);
    let v = json(&["bar-tor", "--algebra", "t", "--prime", "2"]);
    assert_eq!(v["result"]["ok"], true);
    let cmp = json(&["de-rham", "--compare", "--max-degree", "10"]);
    assert_eq!(cmp["result"]["first_residuals"], 0);
    assert_eq!(cmp["result"]["second_residuals"], 0);
}

#[test]
fn writes_output_file() {
    let path = std::env::temp_dir().join(format!("fgl-thh-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = cli(&["sigma", "--format", "json", "--output", p]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "fgl-thh/1");
    std::fs::remove_file(&path).unwrap();
    let bad = cli(&["sigma", "--output", "/nonexistent/dir/x.txt"]);
    assert_eq!(bad.code, 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fgl-thh");
    let ok = Command::new(bin).args(["sigma", "--flavor", "bp", "--prime", "5"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("sigma(v_1) = 5*lambda_1"));
    let usage = Command::new(bin).args(["sigma", "--flavor", "bp"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let threads = Command::new(bin).arg("sigma").env("FGLTHH_THREADS", "0").output().unwrap();
    assert_eq!(threads.status.code(), Some(2));
    let threads = Command::new(bin).args(["cohomology", "--max-degree", "6"]).env("FGLTHH_THREADS", "2").output().unwrap();
    assert!(threads.status.success());
}
