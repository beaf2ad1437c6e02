// SPDX-License-Identifier: Apache-2.0

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pdt").chain(args.iter().copied());
    let code = pdt_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn strip_runtime(mut v: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("runtime_ms");
                m.values_mut().for_each(walk);
            }
            Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    v
}

#[test]
fn measure_and3() {
    let v = json(&["measure", "--fn", "zoo:and:3", "--measures", "dxor,cxor,bsxor"]);
    assert_eq!(v["version"], "1");
    assert_eq!(v["command"], "measure");
    for m in ["dxor", "cxor", "bsxor"] {
        assert_eq!(v["results"][m]["value"], 3, "{m}");
        assert_eq!(v["results"][m]["exact"], true);
        assert!(!v["results"][m]["witness"].is_null());
    }
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn measure_or2() {
    let v = json(&["measure", "--fn", "tt:2:0111", "--measures", "d,dxor"]);
    assert_eq!(v["results"]["d"]["value"], 2);
    assert_eq!(v["results"]["dxor"]["value"], 2);
}

#[test]
fn measure_all_names() {
    let v = json(&[
        "measure",
        "--fn",
        "zoo:example31:3",
        "--measures",
        "d,c,c0,c1,bs,dxor,cxor,c0xor,c1xor,wbsxor,bsxor,di,ci,bsi",
    ]);
    let r = &v["results"];
    assert_eq!(r["wbsxor"]["value"], 1);
    assert_eq!(r["bsxor"]["value"], 2);
    assert_eq!(r["dxor"]["value"], 2);
    for (_, m) in r.as_object().unwrap() {
        assert_eq!(m["exact"], true);
    }
}

#[test]
fn constant_function_has_no_one_certificate() {
    let v = json(&["measure", "--fn", "tt:2:0000", "--measures", "c1xor,c0xor"]);
    assert!(v["results"]["c1xor"]["value"].is_null());
    assert_eq!(v["results"]["c0xor"]["value"], 0);
}

#[test]
fn budgets_refuse_without_sampling() {
    let (code, _, err) = run(&["measure", "--fn", "zoo:maj:5", "--measures", "bsxor"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");
    let v = json(&["measure", "--fn", "zoo:maj:5", "--measures", "ci", "--sample", "20", "--seed", "3"]);
    let ci = &v["results"]["ci"];
    assert!(ci["value"].as_u64().unwrap() >= 1);
    assert_eq!(ci["exact"], ci["semantics"] == "exact");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["measure", "--fn", "tt:2:011", "--measures", "d"]).0, 2);
    assert_eq!(run(&["measure", "--fn", "tt:2:0111", "--measures", "depth"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["comm", "--fn", "zoo:or:2", "--protocol", "det", "--x", "1"]).0, 2);
    assert_eq!(run(&["verify", "--family", "exhaustive:4", "--theorems", "thm2"]).0, 2);
    assert_eq!(run(&["verify", "--family", "exhaustive:3", "--theorems", "thm9"]).0, 2);
    assert_eq!(run(&["construct", "thm-exp", "--k", "2", "--seed", "1"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_exhaustive3() {
    let v = json(&["verify", "--family", "exhaustive:3", "--theorems", "thm1,thm2,monotone"]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    for r in results {
        assert_eq!(r["instances"], 256);
        assert_eq!(r["violation_count"], 0);
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn verify_zoo_examples() {
    let v = json(&["verify", "--family", "zoo:all:3", "--theorems", "example-nonmonotone,eq-coplusc,lemma-exp"]);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let args = ["verify", "--family", "random:3:40:11", "--theorems", "thm1,invariance,thmnc-cost"];
    let one = json(&[&["--threads", "1"], &args[..]].concat());
    let two = json(&[&["--threads", "3"], &args[..]].concat());
    assert_eq!(strip_runtime(one), strip_runtime(two));
}

#[test]
fn csv_output() {
    let (code, out, _) = run(&["--csv", "verify", "--family", "exhaustive:2", "--theorems", "eq1,eq2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "theorem,family,instances,violations,pass");
    assert_eq!(lines[1], "eq1,exhaustive:2,16,0,true");
    let (code, out, _) = run(&["measure", "--fn", "zoo:or:2", "--measures", "c1,c1xor", "--csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("zoo:or:2,c1xor,1,true,exact"), "{out}");
    assert_eq!(run(&["--csv", "construct", "thm-exp", "--k", "3"]).0, 2);
}

#[test]
fn construct_with_check() {
    let v = json(&["construct", "thm-exp", "--k", "3", "--seed", "9", "--check"]);
    assert_eq!(v["check"]["tree_depth"], 7);
    assert_eq!(v["check"]["holds"], true);
    assert_eq!(v["instance"]["leaves"].as_array().unwrap().len(), 64);
    let again = json(&["construct", "thm-exp", "--k", "3", "--seed", "9"]);
    assert_eq!(v["instance"], again["instance"]);
}

#[test]
fn comm_protocols() {
    let v = json(&["comm", "--fn", "zoo:or:2", "--protocol", "det", "--x", "2", "--y", "2"]);
    assert_eq!(v["transcript"]["output"], false);
    assert!(v["transcript"]["total_bits"].as_u64().unwrap() <= 4);
    let v = json(&["comm", "--fn", "zoo:or:2", "--protocol", "nondet", "--x", "1", "--y", "0"]);
    assert_eq!(v["transcript"]["output"], true);
    assert_eq!(v["transcript"]["total_bits"], 3);
    let v = json(&["comm", "--fn", "zoo:maj:3", "--protocol", "nondet", "--sweep"]);
    assert_eq!(v["sweep"]["violations"], 0);
    let v = json(&["comm", "--fn", "zoo:maj:3", "--protocol", "det", "--sweep"]);
    assert_eq!(v["sweep"]["pairs"], 64);
    assert_eq!(run(&["comm", "--fn", "tt:2:0000", "--protocol", "nondet"]).0, 2);
}

#[test]
fn fourier_and2() {
    let v = json(&["fourier", "--fn", "zoo:and:2"]);
    assert_eq!(v["results"]["sparsity"]["value"], 4);
    let coeffs = v["results"]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs[0]["w"], "00");
    assert_eq!(coeffs[0]["value"], "1/4");
    assert_eq!(coeffs[3]["value"], "1/4");
    assert_eq!(coeffs[1]["value"], "-1/4");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pdt");
    let ok = Command::new(bin).args(["measure", "--fn", "zoo:parity:3", "--measures", "dxor"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["results"]["dxor"]["value"], 1);
    let bad = Command::new(bin).args(["measure", "--fn", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
