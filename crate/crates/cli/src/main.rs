//! `freeconv` command-line interface.
//!
//! Every command prints one JSON document. Exit codes: 0 verified (or
//! success), 2 indeterminate, 3 certified violation, 1 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use freeconv::horn;
use freeconv::lab::gen::Distribution;
use freeconv::lab::{self, SearchConfig, VerifyRequest};
use freeconv::multiaffine::{self, MultiPoly};
use freeconv::poly;
use freeconv::rat::{self, Rat};
use freeconv::roots;
use freeconv::RatPoly;

#[derive(Parser)]
#[command(name = "freeconv", version, about = "Exact finite free convolution and certified root inequalities")]
struct Cli {
    /// Target precision, `2^-k` or `a/b`.
    #[arg(long, global = true, default_value = "2^-40")]
    eps: String,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; only `json` is supported.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convolve two polynomials (univariate `coeffs` or multivariate `terms`).
    Convolve {
        /// Two inputs: paths or inline JSON, or one JSON array of both.
        #[arg(long = "in", required = true, num_args = 1..=2)]
        inputs: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Certified root enclosures of a univariate polynomial.
    Roots {
        #[arg(long = "in")]
        input: String,
        /// Pad with -inf to this length.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run one verifier; a previous report is accepted as input.
    Verify {
        #[arg(long)]
        statement: Option<String>,
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Seeded randomized search over one conjecture.
    Search {
        #[arg(long)]
        statement: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value = "mixed")]
        distribution: String,
    },
    /// Horn triples, optionally cross-checked against random Hermitian pairs.
    Horn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        /// Hermitian sampling trials for the cross-check (0 = none).
        #[arg(long, default_value_t = 0)]
        trials: u64,
    },
    /// Exact reproduction of the multiaffine counterexample.
    ReproduceCounterexample,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<(Value, i32), Failure>;

/// Inline JSON if it looks like JSON, otherwise a path.
fn load(s: &str) -> Result<Value, Failure> {
    let t = s.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        s.to_string()
    } else {
        fs::read_to_string(s).map_err(|e| Failure(format!("{s}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

/// Unwrap `{"result": …}` envelopes written by this tool.
fn payload(v: Value) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("result") && !m.contains_key("coeffs") => {
            m.remove("result").unwrap_or(Value::Null)
        }
        v => v,
    }
}

fn envelope(command: &str, eps: &Rat, seed: u64, result: Value) -> Value {
    json!({
        "command": command,
        "eps": rat::format(eps),
        "seed": seed,
        "result": result,
    })
}

fn convolve(inputs: &[String], n: Option<usize>, eps: &Rat, seed: u64) -> CmdResult {
    let values: Vec<Value> = match inputs {
        [one] => match payload(load(one)?) {
            Value::Array(a) if a.len() == 2 => a,
            _ => return Err(Failure("expected two polynomials".into())),
        },
        [a, b] => vec![payload(load(a)?), payload(load(b)?)],
        _ => return Err(Failure("expected two polynomials".into())),
    };
    let result = if values[0].get("terms").is_some() {
        let p: MultiPoly = serde_json::from_value(values[0].clone())?;
        let q: MultiPoly = serde_json::from_value(values[1].clone())?;
        json!(multiaffine::boxplus_gamma(&p, &q)?)
    } else {
        let p: RatPoly = serde_json::from_value(values[0].clone())?;
        let q: RatPoly = serde_json::from_value(values[1].clone())?;
        let n = n.unwrap_or(p.ambient().max(q.ambient()));
        json!(poly::boxplus(&p, &q, n)?)
    };
    Ok((envelope("convolve", eps, seed, result), 0))
}

fn roots_cmd(input: &str, n: Option<usize>, eps: &Rat, seed: u64) -> CmdResult {
    let p: RatPoly = serde_json::from_value(payload(load(input)?))?;
    let rv = match n {
        Some(n) => roots::padded_root_vector(&p, n, eps)?,
        None => roots::root_vector(&p, eps)?,
    };
    Ok((envelope("roots", eps, seed, json!(rv)), 0))
}

fn verify_cmd(statement: Option<String>, input: Option<&str>, eps: &Rat, seed: u64) -> CmdResult {
    let mut v = match input {
        Some(s) => load(s)?,
        None => json!({}),
    };
    // a saved report carries its request under "inputs"
    if let Some(inner) = v.get("inputs") {
        v = inner.clone();
    }
    if let Some(s) = statement {
        v["statement"] = json!(s);
    }
    if v.get("statement").is_none() {
        return Err(Failure("missing --statement".into()));
    }
    let req: VerifyRequest = serde_json::from_value(v)?;
    let rep = lab::verify(&req, eps)?.with_seed(seed);
    let code = rep.exit_code();
    Ok((json!(rep), code))
}

fn search_cmd(statement: &str, n: usize, trials: u64, dist: &str, eps: &Rat, seed: u64) -> CmdResult {
    let mut cfg = SearchConfig::new(statement, n, trials, seed);
    cfg.eps = eps.clone();
    cfg.gen.distribution = dist.parse::<Distribution>()?;
    let out = lab::search_conjectures(&cfg)?;
    Ok((json!(out), 0))
}

fn horn_cmd(n: usize, r: Option<usize>, trials: u64, eps: &Rat, seed: u64) -> CmdResult {
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (1..=n).collect(),
    };
    let mut by_r = Vec::new();
    for r in rs {
        by_r.push(json!({ "r": r, "triples": horn::horn_triples(n, r)? }));
    }
    let mut result = json!({ "n": n, "sets": by_r });
    if trials > 0 {
        result["trials"] = json!(trials);
        result["discrepancies"] = json!(horn::horn_cross_check(n, trials, seed)?);
    }
    Ok((envelope("horn", eps, seed, result), 0))
}

fn reproduce(eps: &Rat, seed: u64) -> CmdResult {
    let (rep, all_ok) = lab::counterexample_report(eps)?;
    let mut v = json!(rep.with_seed(seed));
    v["all_checks_pass"] = json!(all_ok);
    Ok((v, if all_ok { 0 } else { 1 }))
}

fn configure_threads() {
    if let Some(k) = std::env::var("FREECONV_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
}

fn run(cli: Cli) -> CmdResult {
    if cli.format != "json" {
        return Err(Failure(format!("unsupported format `{}`", cli.format)));
    }
    let eps = rat::parse(&cli.eps)?;
    if eps <= Rat::from_integer(0.into()) {
        return Err(Failure("eps must be positive".into()));
    }
    let seed = cli.seed;
    match cli.command {
        Command::Convolve { inputs, n } => convolve(&inputs, n, &eps, seed),
        Command::Roots { input, n } => roots_cmd(&input, n, &eps, seed),
        Command::Verify { statement, input } => verify_cmd(statement, input.as_deref(), &eps, seed),
        Command::Search {
            statement,
            n,
            trials,
            distribution,
        } => search_cmd(&statement, n, trials, &distribution, &eps, seed),
        Command::Horn { n, r, trials } => horn_cmd(n, r, trials, &eps, seed),
        Command::ReproduceCounterexample => reproduce(&eps, seed),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("serialisable") + "\n";
            let written = match &out {
                Some(path) => fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code as u8)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
