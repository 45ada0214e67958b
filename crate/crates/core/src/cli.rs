//! Command-line front end. JSON report on stdout, one-line summary on stderr.
//!
//! Exit codes: 0 = P (or all checks passed), 1 = not P (or a check failed),
//! 2 = input or usage error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::io::{parse_vector, read_matrix, read_text, vector_as_float, vector_as_rational};
use crate::lcp::{lcp_solve_all, lcp_unique_for_samples_any, LcpInstance};
use crate::linalg::AnyMatrix;
use crate::pmatrix::{is_p_any, is_positive_definite_any, Caps, Method};
use crate::verify::{self, VerifyConfig};
use crate::zoo::{block_hadamard_unitary, p_test_relative, BasisSpec, OperatorSpec, PRESETS};

#[derive(Parser, Debug)]
#[command(name = "pcheck", version, about = "P-matrix, LCP and l2 operator checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a matrix is a P-matrix.
    Analyze {
        #[command(flatten)]
        source: MatrixSource,
        /// Truncation size for `--preset`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Test a preset operator's finite section, optionally in the block-Hadamard basis.
    Operator {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "standard")]
        basis: BasisFlag,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Enumerate LCP solutions for one q, or sample q and report uniqueness.
    Lcp {
        #[command(flatten)]
        source: LcpMatrixSource,
        /// Truncation size for `--preset`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        q: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run every property suite.
    VerifyPaper {
        #[arg(long, default_value_t = 32)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Invert every P verdict inside the suites (harness self-test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct MatrixSource {
    /// Matrix file (JSON or CSV).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Operator preset, truncated to `--n`.
    #[arg(long, requires = "n")]
    preset: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct LcpMatrixSource {
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Operator preset, truncated to `--n`.
    #[arg(long, requires = "n")]
    preset: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisFlag {
    Standard,
    BlockHadamard,
}

struct Outcome {
    inputs: Value,
    /// Extra bytes folded into the digest (file contents).
    payload: Vec<u8>,
    result: Value,
    summary: String,
    code: i32,
}

fn digest(inputs: &Value, payload: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(inputs).expect("json"));
    h.update(payload);
    hex::encode(h.finalize())
}

fn load_matrix(
    path: Option<&PathBuf>,
    preset: Option<&String>,
    n: Option<usize>,
) -> Result<(AnyMatrix, Value, Vec<u8>), String> {
    match (path, preset) {
        (Some(p), _) => {
            let text = read_text(p).map_err(|e| e.to_string())?;
            let m = read_matrix(p).map_err(|e| e.to_string())?;
            Ok((m, json!({"matrix_file": p.display().to_string()}), text.into_bytes()))
        }
        (None, Some(name)) => {
            let n = n.ok_or("--preset needs --n")?;
            let spec = OperatorSpec::preset(name).map_err(|e| format!("{e}; known presets: {}", PRESETS.join(", ")))?;
            let m = spec.truncate(n).map_err(|e| e.to_string())?;
            Ok((AnyMatrix::Rational(m), json!({"preset": name, "n": n}), Vec::new()))
        }
        (None, None) => Err("need a matrix file or a preset".into()),
    }
}

fn analyze(source: &MatrixSource, n: Option<usize>, method: Method) -> Result<Outcome, String> {
    let (m, mut inputs, payload) = load_matrix(source.input.as_ref(), source.preset.as_ref(), n)?;
    inputs["method"] = json!(method.as_str());
    let verdict = is_p_any(&m, method, &Caps::default()).map_err(|e| e.to_string())?;
    let pd = is_positive_definite_any(&m);
    let mut notes = Vec::new();
    if verdict.is_p() && !pd {
        notes.push("not positive definite".to_string());
    }
    let is_p = verdict.is_p();
    let summary = format!(
        "{}x{} {} matrix: {}{}",
        m.n(),
        m.n(),
        m.kind(),
        if is_p { "P" } else { "not P" },
        if notes.is_empty() { String::new() } else { format!(" ({})", notes.join("; ")) }
    );
    Ok(Outcome {
        inputs,
        payload,
        result: json!({
            "n": m.n(),
            "scalar": m.kind(),
            "verdict": verdict.to_json(),
            "positive_definite": pd,
            "notes": notes,
        }),
        summary,
        code: if is_p { 0 } else { 1 },
    })
}

fn operator(preset: &str, n: usize, basis: BasisFlag, method: Method) -> Result<Outcome, String> {
    let spec = OperatorSpec::preset(preset).map_err(|e| format!("{e}; known presets: {}", PRESETS.join(", ")))?;
    let basis_spec = match basis {
        BasisFlag::Standard => BasisSpec::Standard,
        BasisFlag::BlockHadamard => BasisSpec::TransformedBy(block_hadamard_unitary(n).map_err(|e| e.to_string())?),
    };
    let rel = p_test_relative(&spec, &basis_spec, n, method, &Caps::default()).map_err(|e| e.to_string())?;
    let basis_name = match basis {
        BasisFlag::Standard => "standard",
        BasisFlag::BlockHadamard => "block-hadamard",
    };
    let summary = format!(
        "{preset} at n = {n}, {basis_name} basis: {}{}",
        if rel.is_p() { "P" } else { "not P" },
        rel.witness.as_ref().map(|w| format!(", witness {w:?}")).unwrap_or_default()
    );
    Ok(Outcome {
        inputs: json!({"preset": preset, "n": n, "basis": basis_name, "method": method.as_str()}),
        payload: Vec::new(),
        result: json!({"spec": spec.to_json(), "relative": rel.to_json()}),
        summary,
        code: if rel.is_p() { 0 } else { 1 },
    })
}

fn lcp(source: &LcpMatrixSource, n: Option<usize>, q: Option<&PathBuf>, samples: Option<usize>, seed: u64) -> Result<Outcome, String> {
    let (m, mut inputs, mut payload) = load_matrix(source.matrix.as_ref(), source.preset.as_ref(), n)?;
    let caps = Caps::default();
    match (q, samples) {
        (Some(qp), _) => {
            let text = read_text(qp).map_err(|e| e.to_string())?;
            let values = parse_vector(&text).map_err(|e| e.to_string())?;
            inputs["q_file"] = json!(qp.display().to_string());
            payload.extend(text.bytes());
            let (result, count) = match &m {
                AnyMatrix::Rational(a) => {
                    let qv = vector_as_rational(&values).map_err(|e| e.to_string())?;
                    let inst = LcpInstance::new(a.clone(), qv).map_err(|e| e.to_string())?;
                    let set = lcp_solve_all(&inst, &caps).map_err(|e| e.to_string())?;
                    (set.to_json(), set.len())
                }
                AnyMatrix::Float(a) => {
                    let qv = vector_as_float(&values).map_err(|e| e.to_string())?;
                    let inst = LcpInstance::new(a.clone(), qv).map_err(|e| e.to_string())?;
                    let set = lcp_solve_all(&inst, &caps).map_err(|e| e.to_string())?;
                    (set.to_json(), set.len())
                }
            };
            Ok(Outcome { inputs, payload, result, summary: format!("{count} solution(s)"), code: 0 })
        }
        (None, Some(k)) => {
            inputs["samples"] = json!(k);
            let report = lcp_unique_for_samples_any(&m, k, seed, &caps).map_err(|e| e.to_string())?;
            let unique = report.all_unique();
            let summary = if unique {
                format!("{k} sampled q: every LCP has exactly one solution")
            } else {
                format!("{k} sampled q: counts {:?}, first violating q {:?}", report.counts, report.violating_q)
            };
            Ok(Outcome { inputs, payload, result: report.to_json(), summary, code: if unique { 0 } else { 1 } })
        }
        (None, None) => Err("need --q or --samples".into()),
    }
}

fn verify_paper(max_n: usize, seed: u64, inject_fault: bool) -> Outcome {
    let report = verify::run(&VerifyConfig { max_n, seed, inject_fault });
    let lines: Vec<String> = report
        .suites
        .iter()
        .map(|s| format!("  [{}] {}: {}", s.criterion, s.name, if s.passed { "pass" } else { "FAIL" }))
        .collect();
    let mut inputs = json!({"max_n": max_n});
    if inject_fault {
        inputs["inject_fault"] = json!(true);
    }
    Outcome {
        inputs,
        payload: Vec::new(),
        summary: format!("verify-paper: {}\n{}", if report.passed { "all suites pass" } else { "FAILED" }, lines.join("\n")),
        code: if report.passed { 0 } else { 1 },
        result: report.to_json(),
    }
}

/// Parses `args`, runs the command, prints the report and returns the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let (name, seed, outcome) = match &cli.command {
        Command::Analyze { source, n, method, seed } => ("analyze", *seed, analyze(source, *n, *method)),
        Command::Operator { preset, n, basis, method, seed } => ("operator", *seed, operator(preset, *n, *basis, *method)),
        Command::Lcp { source, n, q, samples, seed } => ("lcp", *seed, lcp(source, *n, q.as_ref(), *samples, *seed)),
        Command::VerifyPaper { max_n, seed, inject_fault } => ("verify-paper", *seed, Ok(verify_paper(*max_n, *seed, *inject_fault))),
    };
    match outcome {
        Ok(o) => {
            let report = json!({
                "command": name,
                "inputs": o.inputs,
                "inputs_digest": digest(&o.inputs, &o.payload),
                "seed": seed,
                "result": o.result,
                "timing_ms": start.elapsed().as_secs_f64() * 1000.0,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            eprintln!("{}", o.summary);
            o.code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
