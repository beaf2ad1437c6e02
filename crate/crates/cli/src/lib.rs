// SPDX-License-Identifier: Apache-2.0

//! `pdt`: measure, verify, construct and simulate from the command line.
//!
//! Reports are JSON by default (`--csv` for tabular output where supported).
//! Exit codes: 0 on success, 1 when a verification finds a violation, 2 on
//! usage errors and refused budgets.

pub mod measure;
pub mod verify;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdt_core::certify::essential_certificate_set;
use pdt_core::comm;
use pdt_core::construct;
use pdt_core::gf2::Gf2Vector;
use pdt_core::parity::ParityAnalyzer;
use pdt_core::{fourier, parse_function_spec, BooleanFunction, Error, Mode};
use serde_json::{json, Map, Value};

use measure::{Budget, MEASURES};
use verify::{Family, Theorem};

pub const REPORT_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "pdt", version, about = "Parity decision tree complexity of Boolean functions")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV, one row per record.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Sample this many random transformations beyond the exact budgets.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest arity for exact enumeration of GL(n,2) in symmetrized measures.
    #[arg(long, default_value_t = 4)]
    max_exact_n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute complexity measures of one function.
    Measure {
        /// Function spec: tt:<n>:<bits>, anf:<n>:<poly> or zoo:<name>:<n>.
        #[arg(long = "fn")]
        function: String,
        /// Comma-separated list of measures.
        #[arg(long, value_delimiter = ',', required = true)]
        measures: Vec<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check inequalities and identities over a family of functions.
    Verify {
        /// exhaustive:n, random:n:count:seed or zoo:all:n.
        #[arg(long)]
        family: String,
        /// Comma-separated check ids (see the README).
        #[arg(long, value_delimiter = ',', required = true)]
        theorems: Vec<String>,
    },
    /// Build structured functions.
    #[command(subcommand)]
    Construct(Construct),
    /// Simulate communication protocols for F(x, y) = f(x + y).
    Comm {
        /// Function spec, as for `measure`. Arity at most 6 with --sweep.
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_enum)]
        protocol: Protocol,
        /// Alice's input, hexadecimal with x1 as the least significant bit.
        #[arg(long, requires = "y", conflicts_with = "sweep")]
        x: Option<String>,
        /// Bob's input, hexadecimal.
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// Run every input pair and check the protocol.
        #[arg(long)]
        sweep: bool,
    },
    /// Exact Fourier coefficients.
    Fourier {
        /// Function spec, as for `measure`.
        #[arg(long = "fn")]
        function: String,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Random layered parity tree of depth k + 4 on 2^k bits.
    ThmExp {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check the instance, including the tau lower bound at k = 3.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Protocol {
    Det,
    Nondet,
}

/// Command result before formatting. `ok = false` maps to exit code 1.
struct Report {
    command: &'static str,
    body: Map<String, Value>,
    csv: Option<Vec<Vec<String>>>,
    ok: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn parse_fn(spec: &str) -> pdt_core::Result<BooleanFunction> {
    parse_function_spec(spec)
}

fn map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

fn run_measure(spec: &str, names: &[String], sampling: &Sampling) -> pdt_core::Result<Report> {
    let f = parse_fn(spec)?;
    for name in names {
        if !MEASURES.contains(&name.as_str()) {
            return Err(usage(format!("unknown measure {name:?}; expected one of {}", MEASURES.join(","))));
        }
    }
    let mode = match sampling.sample {
        Some(samples) => Mode::Sampled { samples, seed: sampling.seed },
        None => Mode::Exact,
    };
    let budget = Budget { mode, max_exact_n: sampling.max_exact_n };
    let mut an = ParityAnalyzer::new();
    let mut results = Map::new();
    let mut rows = vec![vec!["function".into(), "measure".into(), "value".into(), "exact".into(), "semantics".into()]];
    for name in names {
        let m = measure::evaluate(&mut an, &f, name, budget)?;
        let value = json!(m);
        rows.push(vec![
            spec.to_string(),
            name.clone(),
            m.value.map_or(String::new(), |v| v.to_string()),
            m.exact.to_string(),
            value["semantics"].as_str().unwrap_or_default().to_string(),
        ]);
        results.insert(name.clone(), value);
    }
    let body = map(json!({
        "function": spec,
        "table": f.to_spec(),
        "arity": f.arity(),
        "results": results,
    }));
    Ok(Report { command: "measure", body, csv: Some(rows), ok: true })
}

fn run_verify(family: &str, theorems: &[String]) -> pdt_core::Result<Report> {
    let family: Family = family.parse()?;
    let theorems = theorems.iter().map(|t| t.parse::<Theorem>()).collect::<pdt_core::Result<Vec<_>>>()?;
    let results = verify::run_verification_suite(family, &theorems)?;
    let ok = results.iter().all(|r| r.pass);
    let mut rows = vec![["theorem", "family", "instances", "violations", "pass"].map(String::from).to_vec()];
    for r in &results {
        rows.push(vec![
            r.theorem.to_string(),
            r.family.clone(),
            r.instances.to_string(),
            r.violation_count.to_string(),
            r.pass.to_string(),
        ]);
    }
    let body = map(json!({ "family": family.to_string(), "results": results, "pass": ok }));
    Ok(Report { command: "verify", body, csv: Some(rows), ok })
}

fn run_construct(c: &Construct) -> pdt_core::Result<Report> {
    let Construct::ThmExp { k, seed, check } = c;
    let g = construct::sample_thm_exp(*k, *seed)?;
    let mut body = map(json!({ "function": g.f.to_spec(), "instance": g }));
    let mut ok = true;
    if *check {
        let c = g.check()?;
        ok = c.holds;
        body.insert("check".into(), json!(c));
    }
    Ok(Report { command: "construct", body, csv: None, ok })
}

fn vector(n: usize, hex: &str) -> pdt_core::Result<Gf2Vector> {
    Gf2Vector::from_hex(n, hex)
}

fn run_comm(spec: &str, protocol: Protocol, x: Option<&str>, y: Option<&str>, sweep: bool) -> pdt_core::Result<Report> {
    let f = parse_fn(spec)?;
    let n = f.arity();
    let pair = match (x, y) {
        (Some(x), Some(y)) => Some((vector(n, x)?, vector(n, y)?)),
        _ => None,
    };
    if sweep && n > 6 {
        return Err(Error::budget("protocol sweep arity", 6, n));
    }
    let mut body = map(json!({ "function": spec, "protocol": format!("{protocol:?}").to_lowercase() }));
    let mut ok = true;
    match protocol {
        Protocol::Det => {
            let tree = comm::optimal_tree(&f)?;
            let d = tree.depth();
            body.insert("d_xor".into(), json!({ "value": d, "exact": true }));
            body.insert("cost_bound".into(), json!({ "value": 2 * d, "exact": true }));
            if let Some((x, y)) = pair {
                body.insert("transcript".into(), json!(comm::simulate_det_protocol(&tree, &x, &y)?));
            } else if sweep {
                let (mut pairs, mut wrong, mut max_bits) = (0u64, 0u64, 0u32);
                for x in comm::inputs(n) {
                    for y in comm::inputs(n) {
                        let t = comm::simulate_det_protocol(&tree, &x, &y)?;
                        pairs += 1;
                        max_bits = max_bits.max(t.total_bits);
                        if t.output != f.get(x.bits() ^ y.bits()) || t.total_bits > 2 * d {
                            wrong += 1;
                        }
                    }
                }
                ok = wrong == 0;
                body.insert("sweep".into(), json!({ "pairs": pairs, "violations": wrong, "max_bits": max_bits }));
            } else {
                body.insert("tree".into(), json!(tree));
            }
        }
        Protocol::Nondet => {
            let ess = essential_certificate_set(&f)?;
            body.insert("essential_set".into(), json!(ess));
            body.insert("cost".into(), json!({ "value": ess.protocol_cost(), "exact": true }));
            if let Some((x, y)) = pair {
                body.insert("transcript".into(), json!(comm::nondet_protocol(&f, &ess, &x, &y, None)?));
            } else if sweep {
                let (mut pairs, mut wrong) = (0u64, 0u64);
                for x in comm::inputs(n) {
                    for y in comm::inputs(n) {
                        let t = comm::nondet_protocol(&f, &ess, &x, &y, None)?;
                        pairs += 1;
                        if t.output != f.get(x.bits() ^ y.bits()) || t.total_bits != ess.protocol_cost() {
                            wrong += 1;
                        }
                    }
                }
                ok = wrong == 0;
                body.insert("sweep".into(), json!({ "pairs": pairs, "violations": wrong }));
            }
        }
    }
    Ok(Report { command: "comm", body, csv: None, ok })
}

fn run_fourier(spec: &str) -> pdt_core::Result<Report> {
    let f = parse_fn(spec)?;
    let spectrum = fourier(&f)?;
    let n = f.arity();
    let mut rows = vec![vec!["w".to_string(), "coefficient".to_string()]];
    let coefficients: Vec<Value> = spectrum
        .support()
        .map(|(w, c)| {
            let w = Gf2Vector::new(n, w).to_bitstring();
            rows.push(vec![w.clone(), c.to_string()]);
            json!({ "w": w, "value": c })
        })
        .collect();
    let body = map(json!({
        "function": spec,
        "arity": n,
        "results": {
            "sparsity": { "value": spectrum.sparsity(), "exact": true },
            "coefficients": coefficients,
        },
    }));
    Ok(Report { command: "fourier", body, csv: Some(rows), ok: true })
}

fn dispatch(cli: &Cli) -> pdt_core::Result<Report> {
    match &cli.command {
        Command::Measure { function, measures, sampling } => run_measure(function, measures, sampling),
        Command::Verify { family, theorems } => run_verify(family, theorems),
        Command::Construct(c) => run_construct(c),
        Command::Comm { function, protocol, x, y, sweep } => {
            run_comm(function, *protocol, x.as_deref(), y.as_deref(), *sweep)
        }
        Command::Fourier { function } => run_fourier(function),
    }
}

fn write_csv(out: &mut dyn Write, rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let start = Instant::now();
    let report = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(usage(format!("cannot start {t} threads: {e}"))),
        },
        None => dispatch(&cli),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = if cli.csv {
        match &report.csv {
            Some(rows) => write_csv(out, rows),
            None => {
                let _ = writeln!(err, "error: --csv is not supported for {}", report.command);
                return 2;
            }
        }
    } else {
        let mut doc = Map::new();
        doc.insert("version".into(), json!(REPORT_VERSION));
        doc.insert("command".into(), json!(report.command));
        doc.extend(report.body);
        doc.insert("runtime_ms".into(), json!(start.elapsed().as_millis() as u64));
        serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))
            .map_err(std::io::Error::from)
            .and_then(|_| writeln!(out))
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return 2;
    }
    if report.ok {
        0
    } else {
        1
    }
}
