//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

use std::process::Command;

use serde_json::Value;

use pcheck::verify::{self, VerifyConfig};

fn verify_paper_body(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_pcheck"))
        .arg("verify-paper")
        .args(args)
        .output()
        .expect("binary runs");
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    v.as_object_mut().unwrap().remove("timing_ms");
    (out.status.code(), serde_json::to_vec(&v).unwrap())
}

#[test]
fn acceptance() {
    let report = verify::run(&VerifyConfig { max_n: 64, seed: 42, inject_fault: false });
    let mut lines = Vec::new();
    let mut all = true;
    for suite in &report.suites {
        let mut passed = suite.passed;
        if suite.criterion == 8 {
            let (code_a, a) = verify_paper_body(&["--max-n", "64", "--seed", "42"]);
            let (code_b, b) = verify_paper_body(&["--max-n", "64", "--seed", "42"]);
            passed = passed && code_a == Some(0) && code_b == Some(0) && a == b;
        }
        all &= passed;
        let line = format!(
            "criterion {}: {} ({}, {} cases)",
            suite.criterion,
            if passed { "PASS" } else { "FAIL" },
            suite.name,
            suite.cases
        );
        println!("{line}");
        for f in &suite.failures {
            println!("    {f}");
        }
        lines.push(line);
    }
    assert_eq!(report.suites.len(), 8);
    assert!(all, "failing criteria:\n{}", lines.join("\n"));
}
