use std::process::{Command, Output};

use clap::Parser;
use hurwitz_cli::RunConfig;
use serde_json::Value;

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hurwitz(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().expect("integers are strings").to_string())
        .collect()
}

fn code(args: &[&str]) -> i32 {
    hurwitz(args).status.code().expect("exit code")
}

#[test]
fn expand_golden_ratio() {
    let v = json(&["expand", "--algo", "hurwitz", "--x", "(1+sqrt(5))/2", "--terms", "4"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "hurwitz-positive");
    assert_eq!(strs(&v["terms"]), ["2", "-3", "3", "-3"]);
    assert_eq!(v["finite"], false);
    let qs: Vec<&str> = v["convergents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["q"].as_str().unwrap())
        .collect();
    assert_eq!(qs, ["1", "-3", "-8", "21"]);
}

#[test]
fn expand_rationals() {
    let v = json(&["expand", "--algo", "classical", "--x", "17/12"]);
    assert_eq!(strs(&v["terms"]), ["1", "2", "2", "2"]);
    assert_eq!(v["finite"], true);
    let v = json(&["expand", "--algo", "hurwitz", "--x", "5/2", "--terms", "9"]);
    assert_eq!(strs(&v["terms"]), ["2", "2"]);
    assert_eq!(v["finite"], true);
}

#[test]
fn expand_negative_form_keeps_convergents() {
    let pos = json(&["expand", "--x", "(1+sqrt(5))/2", "--terms", "6"]);
    let neg = json(&["expand", "--x", "(1+sqrt(5))/2", "--terms", "6", "--negative"]);
    assert_eq!(neg["kind"], "hurwitz-negative");
    assert_eq!(strs(&neg["terms"]), ["2", "3", "3", "3", "3", "3"]);
    let ratio = |v: &Value| -> Vec<(i64, i64)> {
        v["convergents"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                let p: i64 = c["p"].as_str().unwrap().parse().unwrap();
                let q: i64 = c["q"].as_str().unwrap().parse().unwrap();
                if q < 0 { (-p, -q) } else { (p, q) }
            })
            .collect()
    };
    assert_eq!(ratio(&pos), ratio(&neg));
    assert_eq!(code(&["expand", "--algo", "classical", "--x", "2/3", "--negative"]), 2);
}

#[test]
fn large_integers_are_exact_strings() {
    let v = json(&["expand", "--x", "(123456789123456789+987654321*sqrt(1000003))/7", "--terms", "40"]);
    let last = v["convergents"].as_array().unwrap().last().unwrap();
    let p = last["p"].as_str().unwrap();
    assert!(p.trim_start_matches('-').len() > 30, "{p}");
}

#[test]
fn expand_csv_and_plain() {
    let out = hurwitz(&["expand", "--x", "sqrt(2)", "--terms", "3", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,a_n,p_n,q_n\n0,1,1,1\n1,2,3,2\n2,2,7,5\n"
    );
    let out = hurwitz(&["expand", "--x", "17/12", "--algo", "classical", "--format", "plain"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("[1, 2, 2, 2] (finite)"));
}

#[test]
fn transform_examples() {
    let v = json(&["transform", "--x", "(1+sqrt(5))/2", "--terms", "10"]);
    let sp: Vec<u64> = v["S_prime"].as_array().unwrap().iter().map(|n| n.as_u64().unwrap()).collect();
    assert_eq!(sp, [1, 3, 5, 7, 9]);
    assert_eq!(v["schema"], 1);

    let v = json(&["transform", "--x", "sqrt(2)"]);
    assert!(v["S"].as_array().unwrap().is_empty());
    assert!(v["omitted"].as_array().unwrap().is_empty());

    let v = json(&["transform", "--b", "0,2,1,1,4"]);
    assert_eq!(strs(&v["hurwitz"]), ["0", "3", "-2", "-4"]);
    assert_eq!(v["omitted"], serde_json::json!([1]));
    assert_eq!(v["finite"], true);
    assert_eq!(strs(&v["signed_quotients"]).len(), 4);

    let v = json(&["transform", "--b", "0,2,1,1,4", "--prefix"]);
    assert_eq!(v["finite"], false);

    let out = hurwitz(&["transform", "--b", "0,2,1,1,4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));
    assert_eq!(code(&["transform", "--b", "0,2,0,1"]), 2);
}

#[test]
fn verify_exit_codes_follow_the_checks() {
    let v = json(&["verify", "--prop", "prop4", "--x", "sqrt(2)", "--n", "30"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 30);
    assert_eq!(v["pass"], true);

    let out = hurwitz(&["verify", "--prop", "prop1", "--terms", "5,2,-2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let first_fail = v["rows"].as_array().unwrap().iter().find(|r| r["pass"] == false).unwrap();
    assert_eq!(first_fail["n"], 1);

    let v = json(&["verify", "--prop", "theorem1", "--x", "(1+sqrt(13))/2", "--rho", "5000"]);
    assert_eq!(v["pass"], true);
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["check"] == "coverage"));

    for prop in ["prop2", "prop3", "prop5", "theorem2-sandwich"] {
        let out = hurwitz(&["verify", "--prop", prop, "--x", "(3+sqrt(7))/2", "--n", "15"]);
        assert_eq!(out.status.code(), Some(0), "{prop}");
    }
    let out = hurwitz(&["verify", "--prop", "prop3", "--x", "sqrt(3)", "--n", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,a_n,q_n,check_name,lhs,rhs,pass\n"));
    assert_eq!(text.lines().count(), 6);

    assert_eq!(code(&["verify", "--prop", "prop9", "--x", "sqrt(2)"]), 2);
    assert_eq!(code(&["verify", "--prop", "prop3"]), 2);
}

#[test]
fn count_examples() {
    let v = json(&["count", "xrho", "--x", "sqrt(101)", "--delta", "1/3", "--rho", "20"]);
    assert_eq!(v["count"], "2");
    assert!(v.get("witnesses").is_none());

    let v = json(&[
        "count", "gform", "--a", "sqrt(2)", "--b", "1", "--c", "sqrt(2)-1", "--d", "1", "--delta", "3/10",
        "--kappa", "1/10", "--rho", "100",
    ]);
    assert_eq!(v["count"], "1");

    let v = json(&["count", "sandwich", "--x", "(1+sqrt(5))/2", "--delta", "1/3", "--n", "10"]);
    let last = v["series"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(
        (last["count_lower"].as_u64(), last["count_mid"].as_u64(), last["count_upper"].as_u64()),
        (Some(0), Some(0), Some(10))
    );
    assert_eq!(v["pass"], true);

    let v = json(&["count", "cd", "--x", "sqrt(7)", "--delta", "1/4", "--n", "20"]);
    let e = json(&["expand", "--x", "sqrt(7)", "--terms", "22"]);
    let big: Vec<i64> = strs(&e["terms"]).iter().map(|t| t.parse::<i64>().unwrap().abs()).collect();
    // D_20(1/delta + 1): share of j in 1..=20 with |a_{j+1}| >= 5
    let hits = (1..=20).filter(|&j| big[j + 1] >= 5).count();
    let want = if hits == 0 { "0".to_string() } else {
        let g = (1..=hits).rev().find(|d| hits % d == 0 && 20 % d == 0).unwrap();
        if 20 / g == 1 { format!("{}", hits / g) } else { format!("{}/{}", hits / g, 20 / g) }
    };
    assert_eq!(v["e_n"], want.as_str());
    assert!(v["alpha"]["lo"].is_string());
}

#[test]
fn witness_csv_renderings() {
    let base = ["count", "xrho", "--x", "sqrt(101)", "--delta", "1/3", "--rho", "20", "--format", "csv"];
    let surd = String::from_utf8(hurwitz(&base).stdout).unwrap();
    assert_eq!(surd, "p,q,quality\n10,1,-10+sqrt(101)\n201,20,4020-400*sqrt(101)\n");
    let mut args = base.to_vec();
    args.extend(["--render", "decimal"]);
    let dec = String::from_utf8(hurwitz(&args).stdout).unwrap();
    let row = dec.lines().nth(1).unwrap();
    assert!(row.starts_with("10,1,\"[0.04987562112089027021, 0.0498756211208902702"), "{row}");
}

#[test]
fn oracle_count_matches_and_is_thread_independent() {
    let run = |threads: &str, chunk: &str| {
        let out = hurwitz(&[
            "count", "xrho", "--x", "(5+3*sqrt(19))/7", "--delta", "1/3", "--rho", "20000", "--method", "oracle",
            "--witnesses", "--threads", threads, "--chunk-size", chunk,
        ]);
        assert!(out.status.success());
        out.stdout
    };
    let a = run("1", "4096");
    assert_eq!(a, run("4", "97"));
    assert_eq!(a, run("16", "1000"));
    let conv: Value = json(&[
        "count", "xrho", "--x", "(5+3*sqrt(19))/7", "--delta", "1/3", "--rho", "20000", "--witnesses",
    ]);
    let oracle: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(conv["count"], oracle["count"]);
    let pq = |v: &Value| -> Vec<(Value, Value)> {
        v["witnesses"].as_array().unwrap().iter().map(|w| (w["p"].clone(), w["q"].clone())).collect()
    };
    assert_eq!(pq(&conv), pq(&oracle));
}

#[test]
fn gform_exhaustive_agrees() {
    let args = |extra: &'static str| {
        let mut v = vec![
            "count", "gform", "--a", "(1+sqrt(3))/2", "--b", "1", "--c", "sqrt(3)", "--d", "2", "--delta",
            "3/10", "--kappa", "1/3", "--rho", "60", "--witnesses", "--format", "csv",
        ];
        if !extra.is_empty() {
            v.push(extra);
        }
        v
    };
    let fast = hurwitz(&args(""));
    let slow = hurwitz(&args("--exhaustive"));
    assert_eq!(fast.stdout, slow.stdout);
    assert!(String::from_utf8(fast.stdout).unwrap().starts_with("p,q,form\n"));
}

#[test]
fn usage_and_precision_errors() {
    assert_eq!(code(&["expand", "--x", "1/0"]), 2);
    assert_eq!(code(&["expand", "--x", "0.5"]), 2);
    assert_eq!(code(&["expand", "--x", "sqrt(2)+sqrt(3)"]), 2);
    assert_eq!(code(&["count", "xrho", "--x", "sqrt(2)", "--delta", "1/2", "--rho", "20"]), 2);
    assert_eq!(code(&["count", "xrho", "--x", "sqrt(2)", "--delta", "0.3", "--rho", "20"]), 2);
    assert_eq!(
        code(&[
            "count", "gform", "--a", "sqrt(2)", "--b", "1", "--c", "sqrt(2)", "--d", "1", "--delta", "1/10",
            "--kappa", "1/10", "--rho", "10",
        ]),
        2
    );
    assert_eq!(code(&["frobnicate"]), 2);
    let out = hurwitz(&["expand", "--x", "dec:1.41421356237@40", "--terms", "30"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("40 bits"));
    assert_eq!(code(&["expand", "--x", "dec:1.41421356237@40", "--terms", "3"]), 0);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("hurwitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("exp.json");
    let args = ["expand", "--x", "sqrt(3)", "--terms", "8"];
    let direct = hurwitz(&args).stdout;
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    let out = hurwitz(&with_out);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn emitted_config_replays_identically() {
    let dir = std::env::temp_dir().join(format!("hurwitz-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    let args = ["count", "sandwich", "--x", "sqrt(11)", "--delta", "1/4", "--n", "12", "--format", "csv"];
    let mut emit = args.to_vec();
    emit.push("--emit-config");
    std::fs::write(&path, hurwitz(&emit).stdout).unwrap();
    let replayed = hurwitz(&["replay", path.to_str().unwrap()]);
    assert!(replayed.status.success());
    assert_eq!(replayed.stdout, hurwitz(&args).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn run_config_round_trips_through_json() {
    let cases: &[&[&str]] = &[
        &["hurwitz", "expand", "--x", "(1+sqrt(5))/2", "--terms", "4", "--negative"],
        &["hurwitz", "--format", "csv", "transform", "--b", "0,2,1,1,4", "--prefix"],
        &["hurwitz", "verify", "--prop", "theorem2-sandwich", "--x", "sqrt(2)", "--delta", "1/7", "--threads", "3"],
        &["hurwitz", "count", "xrho", "--x", "-sqrt(7)", "--delta", "1/5", "--rho", "1000", "--method", "oracle"],
        &[
            "hurwitz", "count", "gform", "--a", "sqrt(2)", "--b", "1", "--c", "sqrt(2)-1", "--d", "1",
            "--delta", "3/10", "--kappa", "1/10", "--rho", "100", "--render", "decimal", "--out", "/tmp/x.csv",
        ],
        &["hurwitz", "--precision-bits", "300", "--chunk-size", "17", "count", "cd", "--x", "dec:2.5@90", "--delta", "1/4", "--n", "3"],
    ];
    for args in cases {
        let cfg = RunConfig::try_parse_from(*args).unwrap();
        let back = RunConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg, "{args:?}");
    }
}
