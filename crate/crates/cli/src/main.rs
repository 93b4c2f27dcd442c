//! `lerch`: evaluate the closed forms from the command line and run the
//! verification sweeps.
//!
//! Exit codes: 0 success, 1 failed verification checks, 2 domain error,
//! 3 convergence failure, 64 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lerch_core::verify::{CheckReport, ReportValue};
use lerch_core::{
    fourier_series_b, hp_asymptotic_constant, hurwitz_zeta_neg, lerch_e_sum, lerch_partial_closed,
    lerch_partial_direct, lerch_phi, polylog, run_suite, summarize, trig_partial_closed, trig_partial_direct,
    ComplexValue, Error, Grid, LerchParams, OutputFormat, QuadConfig, RunConfig, SeriesSpec, Suite, SumParams,
    Trig, TrigKind,
};
use serde::Serialize;
use serde_json::{json, Value};

mod complex;

use complex::Complex;

const MAX_EVALS_ENV: &str = "LERCH_KERNEL_MAX_EVALS";

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "lerch", version, about = "Closed-form Fourier sums, Lerch transcendent and polylogarithm")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// RunConfig as JSON; flags and the environment override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Integrand evaluation budget per quadrature.
    #[arg(long, global = true)]
    max_evals: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Partial sum over j = 1..n of a trig or exponential term of a j + b.
    Partial(PartialArgs),
    /// Full Fourier series over the progression j + b.
    Series(SeriesArgs),
    /// Exponential Lerch sum, or Phi(e^m, k, b) with --phi.
    Lerch(LerchArgs),
    /// Polylogarithm Li_k(e^m).
    Polylog(PolylogArgs),
    /// Hurwitz zeta at a negative integer, zeta(-k, b).
    HurwitzNeg(HurwitzArgs),
    /// Asymptotic constant of the harmonic progression sum over 1/(j + b).
    HpConst(HpArgs),
    /// Run verification checks and print one report per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PartialArgs {
    /// cos-even, sin-odd, cos-odd, sin-even or exp.
    #[arg(long)]
    kind: PartialKind,
    #[arg(short, long, default_value = "1", allow_hyphen_values = true)]
    a: Complex,
    #[arg(short, long, allow_hyphen_values = true)]
    b: Complex,
    #[arg(short, long, allow_hyphen_values = true)]
    m: Complex,
    #[arg(short, long)]
    k: u32,
    #[arg(short, long)]
    n: u64,
    /// Sum the terms directly instead of evaluating the closed form.
    #[arg(long)]
    direct: bool,
}

#[derive(Clone, Copy)]
enum PartialKind {
    Trig(TrigKind),
    Exp,
}

impl std::str::FromStr for PartialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exp" | "exponential" => Ok(PartialKind::Exp),
            _ => s.parse().map(PartialKind::Trig),
        }
    }
}

#[derive(Args)]
struct SeriesArgs {
    /// cos or sin.
    #[arg(long)]
    trig: Trig,
    #[arg(long)]
    order: u32,
    #[arg(short, long, allow_hyphen_values = true)]
    m: Complex,
    #[arg(short, long, default_value = "0", allow_hyphen_values = true)]
    b: Complex,
}

#[derive(Args)]
struct LerchArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    m: Complex,
    #[arg(short, long)]
    k: u32,
    #[arg(short, long, allow_hyphen_values = true)]
    b: Complex,
    /// Evaluate Phi(e^m, k, b) instead of the sum from j = 1.
    #[arg(long)]
    phi: bool,
}

#[derive(Args)]
struct PolylogArgs {
    #[arg(short, long)]
    k: u32,
    #[arg(short, long, allow_hyphen_values = true)]
    m: Complex,
}

#[derive(Args)]
struct HurwitzArgs {
    #[arg(short, long)]
    k: u32,
    #[arg(short, long, allow_hyphen_values = true)]
    b: Complex,
}

#[derive(Args)]
struct HpArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    b: Complex,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, oracle, quadrature, harmonic, partial_sums, series_limits, lerch or hurwitz.
    #[arg(default_value = "all")]
    suite: Suite,
    #[arg(long)]
    seed: Option<u64>,
    /// small or full.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<Grid>,
    /// json (one report per line) or csv.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    match s {
        "small" => Ok(Grid::Small),
        "full" => Ok(Grid::Full),
        _ => Err(format!("unknown grid `{s}` (expected small or full)")),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        _ => Err(format!("unknown format `{s}` (expected json or csv)")),
    }
}

/// Failure of a command, mapped onto an exit code.
enum Failure {
    Usage(String),
    Eval(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Eval(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_convergence_failure() { EXIT_CONVERGENCE } else { EXIT_DOMAIN })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

/// Defaults, then the config file, then the environment, then flags.
fn run_config(global: &GlobalOpts) -> Result<RunConfig, Failure> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Ok(v) = std::env::var(MAX_EVALS_ENV) {
        cfg.max_evals = v.trim().parse().map_err(|_| Failure::Usage(format!("{MAX_EVALS_ENV}={v} is not a count")))?;
    }
    if let Some(v) = global.rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = global.abs_tol {
        cfg.abs_tol = v;
    }
    if let Some(v) = global.max_evals {
        cfg.max_evals = v;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let mut cfg = run_config(&cli.global)?;
    let quad = cfg.quad();
    let record = match cli.command {
        Command::Verify(args) => {
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(grid) = args.grid {
                cfg.grid = grid;
            }
            if let Some(format) = args.format {
                cfg.output_format = format;
            }
            return verify(args.suite, &cfg);
        }
        Command::Partial(args) => partial(args, &quad)?,
        Command::Series(args) => {
            let spec = SeriesSpec { trig: args.trig, order: args.order, m: args.m.0, b: args.b.0 };
            let v = fourier_series_b(&spec, &quad)?;
            record(
                "series",
                json!({ "trig": args.trig, "order": args.order, "m": rv(spec.m), "b": rv(spec.b) }),
                v.value,
                v.error_estimate,
                json!({ "regime": v.regime, "best_effort": v.best_effort }),
            )
        }
        Command::Lerch(args) => {
            let p = LerchParams { m: args.m.0, k: args.k, b: args.b.0 };
            let v = if args.phi { lerch_phi(&p, &quad)? } else { lerch_e_sum(&p, &quad)? };
            record(
                if args.phi { "lerch-phi" } else { "lerch" },
                json!({ "m": rv(p.m), "k": p.k, "b": rv(p.b) }),
                v.value,
                v.error_estimate,
                json!({ "is_continuation": v.is_continuation }),
            )
        }
        Command::Polylog(args) => {
            let v = polylog(args.k, args.m.0, &quad)?;
            record(
                "polylog",
                json!({ "k": args.k, "m": rv(args.m.0) }),
                v.value,
                v.error_estimate,
                json!({ "is_continuation": v.is_continuation }),
            )
        }
        Command::HurwitzNeg(args) => {
            let v = hurwitz_zeta_neg(args.k, args.b.0)?;
            record("hurwitz-neg", json!({ "k": args.k, "b": rv(args.b.0) }), v, 0.0, json!({}))
        }
        Command::HpConst(args) => {
            let v = hp_asymptotic_constant(args.b.0, &quad)?;
            record("hp-const", json!({ "b": rv(v.b) }), v.value, v.error_estimate, json!({ "regime": v.regime }))
        }
    };
    println!("{record}");
    Ok(ExitCode::SUCCESS)
}

fn rv(z: ComplexValue) -> ReportValue {
    z.into()
}

fn record(operation: &str, params: Value, value: ComplexValue, error_estimate: f64, extra: Value) -> Value {
    let mut out = json!({
        "operation": operation,
        "params": params,
        "value": rv(value),
        "error_estimate": error_estimate,
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut out, extra) {
        out.extend(extra);
    }
    out
}

fn partial(args: PartialArgs, quad: &QuadConfig) -> Result<Value, Failure> {
    let p = SumParams { a: args.a.0, b: args.b.0, m: args.m.0, k: args.k, n: args.n };
    let params = json!({ "a": rv(p.a), "b": rv(p.b), "m": rv(p.m), "k": p.k, "n": p.n });
    let (name, value, estimate) = match (args.kind, args.direct) {
        (PartialKind::Trig(kind), false) => {
            let e = trig_partial_closed(kind, &p, quad)?;
            (kind.name(), e.value, e.error_estimate)
        }
        (PartialKind::Trig(kind), true) => (kind.name(), trig_partial_direct(kind, &p)?, 0.0),
        (PartialKind::Exp, false) => {
            let e = lerch_partial_closed(&p, quad)?;
            ("exp", e.value, e.error_estimate)
        }
        (PartialKind::Exp, true) => ("exp", lerch_partial_direct(&p)?, 0.0),
    };
    Ok(record(
        "partial",
        params,
        value,
        estimate,
        json!({ "kind": name, "method": if args.direct { "direct" } else { "closed" } }),
    ))
}

/// One CSV row: complex values flattened to re/im column pairs.
#[derive(Serialize)]
struct CsvRow<'a> {
    identity_id: &'a str,
    params: String,
    formula_re: f64,
    formula_im: f64,
    oracle_re: f64,
    oracle_im: f64,
    abs_err: f64,
    rel_err: f64,
    pass: bool,
    skipped_reason: &'a str,
    error: &'a str,
}

impl<'a> From<&'a CheckReport> for CsvRow<'a> {
    fn from(r: &'a CheckReport) -> Self {
        CsvRow {
            identity_id: &r.identity_id,
            params: r.params.to_string(),
            formula_re: r.formula_value.re,
            formula_im: r.formula_value.im,
            oracle_re: r.oracle_value.re,
            oracle_im: r.oracle_value.im,
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            pass: r.pass,
            skipped_reason: r.skipped_reason.as_deref().unwrap_or(""),
            error: r.error.as_deref().unwrap_or(""),
        }
    }
}

fn verify(suite: Suite, cfg: &RunConfig) -> Result<ExitCode, Failure> {
    eprintln!("running {} checks (seed {}, {:?} grid)", suite.name(), cfg.seed, cfg.grid);
    let reports = run_suite(suite, cfg)?;
    let (passed, total) = summarize(&reports);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match cfg.output_format {
        OutputFormat::Json => {
            for r in &reports {
                serde_json::to_writer(&mut out, r).map_err(|e| Failure::Io(e.to_string()))?;
                writeln!(out)?;
            }
            writeln!(out, "{passed}/{total}")?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for r in &reports {
                w.serialize(CsvRow::from(r)).map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.flush()?;
            drop(w);
            // keep stdout a well-formed table
            eprintln!("{passed}/{total}");
        }
    }
    out.flush()?;
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {} {}", r.identity_id, r.params);
    }
    Ok(if passed == total { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY_FAILED) })
}
