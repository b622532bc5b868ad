use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn pnm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnm"))
        .args(args)
        .output()
        .expect("pnm runs")
}

fn code(args: &[&str]) -> i32 {
    pnm(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(pnm(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pnm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn excluded_middle_exits_zero() {
    let args = [
        "decide",
        "--matrix",
        "bool2",
        "--mode",
        "multiple",
        "--premises",
        "",
        "--conclusions",
        "p, neg(p)",
    ];
    assert_eq!(code(&args), 0);
    assert!(stdout(&args).contains("verdict: yes"));
}

#[test]
fn refuted_queries_exit_one_with_countermodel() {
    let args = [
        "decide-combined",
        "--left",
        "kleene-impk",
        "--right",
        "luk-impl",
        "--route",
        "product",
        "--premises",
        "impK(p, q)",
        "--conclusions",
        "impL(p, q)",
    ];
    assert_eq!(code(&args), 1);
    let mut full = vec!["--json"];
    full.extend_from_slice(&args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    assert_eq!(v["verdict"], "no");
    let cm = v["countermodel"].as_array().unwrap();
    let val = |f: &str| cm.iter().find(|e| e["formula"] == f).unwrap()["value"].clone();
    assert_eq!(val("p"), "0|h");
    assert_eq!(val("q"), "0|0");
}

#[test]
fn pruned_product_file_round_trip() {
    let out = scratch("kl.pnm");
    let out_s = out.to_str().unwrap();
    assert_eq!(
        code(&[
            "product",
            "--left",
            "kleene-imp",
            "--right",
            "luk-imp",
            "--prune",
            "--out",
            out_s
        ]),
        0
    );
    let v = json(&["info", out_s]);
    assert_eq!(v["usable"].as_array().unwrap().len(), 3);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["kind"], "Pmatrix");
}

#[test]
fn saturation_witness_exits_one() {
    assert_eq!(code(&["refute-saturation", "--matrix", "luk-imp"]), 1);
    let v = json(&["refute-saturation", "--matrix", "bool2[neg]"]);
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["witness"]["conclusions"], serde_json::json!(["p", "neg(p)"]));
    assert_eq!(v["bounds"]["max_premises"], 2);
    let v = json(&["refute-saturation", "--matrix", "neg3"]);
    assert_eq!(v["verdict"], "inconclusive");
    assert!(v["witness"].is_null());
    assert_eq!(code(&["refute-saturation", "--matrix", "neg3"]), 2);
}

#[test]
fn usage_and_runtime_errors() {
    assert_eq!(code(&["decide", "--bogus"]), 3);
    assert_eq!(code(&[]), 3);
    assert_eq!(code(&["-m", "bool2"]), 3);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["info", "nope"]), 4);
    let o = pnm(&["info", "nope"]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("available"));
    assert_eq!(code(&["decide", "--matrix", "bool2", "--conclusions", "neg(p, q)"]), 4);
    assert_eq!(
        code(&[
            "decide",
            "--matrix",
            "bool2",
            "--mode",
            "single",
            "--conclusions",
            "p, q"
        ]),
        4
    );
}

#[test]
fn matrix_constructions() {
    let v = json(&["sum", "--matrix", "nobin0", "--matrix", "nobin2"]);
    assert_eq!(v["values"].as_array().unwrap().len(), 3);
    let v = json(&["power", "--matrix", "bool2[or]", "--k", "2"]);
    assert_eq!(v["values"], serde_json::json!(["0&0", "0&1", "1&0", "1&1"]));
    let v = json(&["reduct", "--matrix", "luk3", "--connectives", "neg, imp"]);
    assert_eq!(v["signature"], "{imp/2, neg/1}");
    let v = json(&["extend", "--matrix", "bool2[neg]", "--signature", "box/1"]);
    assert_eq!(v["signature"], "{box/1, neg/1}");
    let kl = scratch("kl-full.pnm");
    let kl_s = kl.to_str().unwrap();
    assert_eq!(
        code(&["product", "--left", "kleene-imp", "--right", "luk-imp", "--out", kl_s]),
        0
    );
    let v = json(&["prune", "--matrix", kl_s]);
    assert_eq!(v["values"], serde_json::json!(["0|0", "0|h", "1|1"]));
    assert!(stdout(&["fixtures", "--name", "sources"]).contains("table and:"));
    assert!(stdout(&["fixtures"]).contains("kleene-ks"));
}

#[test]
fn analysis_commands() {
    let v = json(&["monadic", "--matrix", "kleene-ks"]);
    assert_eq!(v["verdict"], "monadic");
    assert_eq!(v["separators"], serde_json::json!(["p", "neg(p)"]));
    let args = [
        "separators",
        "--matrix",
        "luk3",
        "--x",
        "0",
        "--y",
        "h",
        "--connectives",
        "imp",
        "--depth",
        "4",
    ];
    assert_eq!(code(&args), 2);
    let v = json(&[
        "split-advice",
        "--matrix",
        "kleene-ks",
        "--left",
        "and,neg",
        "--right",
        "or,neg",
    ]);
    assert_eq!(v["verdict"], "split-safe-multiple");
    let args = [
        "split-advice",
        "--matrix",
        "luk3",
        "--left",
        "neg,imp",
        "--right",
        "nabla",
    ];
    assert_eq!(code(&args), 1);
    assert_eq!(
        code(&["check-rules", "--matrix", "sources", "--calculus", "sources"]),
        0
    );
    assert_eq!(
        code(&["check-rules", "--matrix", "sources", "--calculus", "kleene-ks"]),
        1
    );
}

#[test]
fn rule_files_are_checked() {
    let path = scratch("rules.txt");
    std::fs::write(&path, "mp : p, imp(p, q) |- q\nbad : imp(p, q) |- q\n").unwrap();
    let v = json(&["check-rules", "--matrix", "bool2", "--rules", path.to_str().unwrap()]);
    assert_eq!(v["verdict"], "unsound");
    assert_eq!(v["rules"][0]["verdict"], "yes");
    assert_eq!(v["rules"][1]["verdict"], "no");
}

#[test]
fn combination_commands() {
    let v = json(&["combine", "--left", "neg3", "--right", "bool2[and]", "--mode", "single"]);
    assert_eq!(v["basis"], "known-saturated");
    assert_eq!(
        code(&[
            "combine",
            "--left",
            "bool2[neg]",
            "--right",
            "bool2[and]",
            "--mode",
            "single"
        ]),
        1
    );
    let v = json(&[
        "combine",
        "--left",
        "bool2[and]",
        "--right",
        "bool2[or]",
        "--mode",
        "single",
        "--powers",
        "1",
        "2",
    ]);
    assert_eq!(v["values"].as_array().unwrap().len(), 4);
    let args = [
        "decide-combined",
        "--left",
        "neg3",
        "--right",
        "bool2[and]",
        "--mode",
        "single",
        "--left-saturated",
        "--right-saturated",
        "--premises",
        "neg(neg(p))",
        "--conclusions",
        "p",
    ];
    let mut full = vec!["--json"];
    full.extend_from_slice(&args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["certified"], true);
}

#[test]
fn axiom_derivation_exit_codes() {
    assert_eq!(
        code(&[
            "axiom-derive",
            "--matrix",
            "mp",
            "--conclusion",
            "imp(q, q)",
            "--depth",
            "0"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "axiom-derive",
            "--matrix",
            "mp",
            "--conclusion",
            "imp(q, q)",
            "--depth",
            "2"
        ]),
        0
    );
}

#[test]
fn parse_prints_canonical_forms() {
    let v = json(&["parse", "--signature", "neg/1, and/2", "--formulas", "and( p ,neg(q))"]);
    assert_eq!(v["formulas"][0]["formula"], "and(p, neg(q))");
    assert_eq!(v["formulas"][0]["depth"], 2);
    assert_eq!(code(&["parse", "--formulas", "p"]), 4);
}
