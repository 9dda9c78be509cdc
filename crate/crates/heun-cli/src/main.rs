//! `heun` — command-line evaluator for general Heun functions.
//!
//! Subcommands: `eval` (Cauchy problem on a straight segment), `eval-regular`
//! (two-sided regular solution through the puncture at 0), `bench` (timing +
//! self-refinement error report), `convergence` (Richardson order study).
//!
//! Exit codes: 0 success, 2 parameter/usage validation, 3 segment crosses a
//! singularity, 4 numerical failure. Data goes to stdout (or `--out`);
//! diagnostics go to stderr.

mod format;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use heun_core::oracle::richardson_order;
use heun_core::params::HeunParameters;
use heun_core::pathsum::{
    evaluate_interval, evaluate_regular_from_origin, RefineConfig, SolutionTable,
};
use heun_core::{CauchyData, HeunError};

use format::{parse_complex, write_csv, write_csv_sided};
use report::{BenchEntry, BenchReport, ConvergenceReport, JsonTable, SidedJsonTable};

#[derive(Parser)]
#[command(name = "heun", version, about = "General Heun function evaluator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Singularity location t (complex, RE+IMj)
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Accessory parameter q
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    /// If omitted, set from the Fuchs relation ε = 1+α+β−γ−δ
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Clone)]
struct SegmentArgs {
    /// Segment start (complex, RE+IMj)
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    /// Segment end
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    /// Number of chained sub-segments N1
    #[arg(long, default_value_t = 1)]
    n1: usize,
    /// Points per sub-segment N2
    #[arg(long, default_value_t = 100)]
    n2: usize,
    /// Minimum allowed distance to the singularities {0, 1, t}
    #[arg(long, default_value_t = 1e-4)]
    puncture: f64,
    /// Near-singularity grading strength (0 disables internal refinement)
    #[arg(long, default_value_t = 32768.0)]
    beta_refine: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate H and H' from Cauchy data along a straight segment
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        /// Cauchy anchor z0 (must equal --from)
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        /// H(z0)
        #[arg(long = "H0", allow_hyphen_values = true)]
        h0: String,
        /// H'(z0)
        #[arg(long = "H0p", allow_hyphen_values = true)]
        h0p: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-sided regular solution (H(0)=1, H'(0)=q/(γt)) on a segment
    /// straddling 0
    #[command(name = "eval-regular")]
    EvalRegular {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Timing and self-refinement error report on the regular two-sided
    /// protocol
    Bench {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        /// Total point counts to benchmark (comma separated)
        #[arg(long, default_value = "1000,10000", value_delimiter = ',')]
        points: Vec<usize>,
        /// Timing repeats per point count (median reported)
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Richardson order study at resolutions n2, 2n2−1, 4n2−3 (uniform grid,
    /// no internal refinement, so the raw O(Δz²) order is observable)
    Convergence {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long = "H0", allow_hyphen_values = true)]
        h0: String,
        #[arg(long = "H0p", allow_hyphen_values = true)]
        h0p: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<HeunError> for CliError {
    fn from(e: HeunError) -> Self {
        let code = match &e {
            HeunError::DegenerateSingularity { .. }
            | HeunError::InvalidSeed { .. }
            | HeunError::SeedDivergence
            | HeunError::InvalidArgument(_) => 2,
            HeunError::SegmentCrossesSingularity { .. } => 3,
            _ => 4,
        };
        CliError { code, message: e.to_string() }
    }
}

fn parse_c(label: &str, s: &str) -> Result<Complex64, CliError> {
    parse_complex(s).map_err(|e| CliError::usage(format!("--{label}: {e}")))
}

fn build_params(a: &ParamArgs) -> Result<HeunParameters, CliError> {
    let t = parse_c("t", &a.t)?;
    let q = parse_c("q", &a.q)?;
    let alpha = parse_c("alpha", &a.alpha)?;
    let beta = parse_c("beta", &a.beta)?;
    let gamma = parse_c("gamma", &a.gamma)?;
    let delta = parse_c("delta", &a.delta)?;
    let p = match &a.epsilon {
        Some(e) => {
            let epsilon = parse_c("epsilon", e)?;
            HeunParameters::new(t, q, alpha, beta, gamma, delta, epsilon)?
        }
        None => HeunParameters::new_fuchs(t, q, alpha, beta, gamma, delta)?,
    };
    if !p.fuchs_satisfied() {
        eprintln!("warning: Fuchs relation epsilon = 1+alpha+beta-gamma-delta is not satisfied");
    }
    Ok(p)
}

fn check_segment_args(s: &SegmentArgs) -> Result<(Complex64, Complex64), CliError> {
    if s.n1 < 1 {
        return Err(CliError::usage("--n1 must be >= 1"));
    }
    if s.n2 < 3 {
        return Err(CliError::usage("--n2 must be >= 3"));
    }
    let from = parse_c("from", &s.from)?;
    let to = parse_c("to", &s.to)?;
    Ok((from, to))
}

fn refine_config(s: &SegmentArgs) -> RefineConfig {
    RefineConfig {
        beta: s.beta_refine,
        ..RefineConfig::default()
    }
}

fn emit(output: &OutputArgs, data: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| CliError { code: 4, message: format!("cannot write {path}: {e}") }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(data.as_bytes())
                .map_err(|e| CliError { code: 4, message: format!("stdout: {e}") })
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { params, segment, z0, h0, h0p, output } => {
            let p = build_params(&params)?;
            let (from, to) = check_segment_args(&segment)?;
            let z0 = parse_c("z0", &z0)?;
            let h0 = parse_c("H0", &h0)?;
            let h0p = parse_c("H0p", &h0p)?;
            let cauchy = CauchyData::new(z0, h0, h0p, &p)?;
            let table = evaluate_interval(
                &p,
                &cauchy,
                from,
                to,
                segment.n1,
                segment.n2,
                segment.puncture,
                &refine_config(&segment),
            )?;
            let data = match output.format.as_str() {
                "csv" => write_csv(&table),
                _ => JsonTable::from_table(&table).render()?,
            };
            emit(&output, &data)
        }
        Command::EvalRegular { params, segment, output } => {
            let p = build_params(&params)?;
            let (from, to) = check_segment_args(&segment)?;
            let (left, right) = evaluate_regular_from_origin(
                &p,
                from,
                to,
                segment.puncture,
                segment.n1,
                segment.n2,
                &refine_config(&segment),
            )?;
            let data = match output.format.as_str() {
                "csv" => write_csv_sided(&left, &right),
                _ => SidedJsonTable::from_tables(&left, &right).render()?,
            };
            emit(&output, &data)
        }
        Command::Bench { params, segment, points, repeats, output } => {
            let p = build_params(&params)?;
            let (from, to) = check_segment_args(&segment)?;
            if repeats < 3 {
                return Err(CliError::usage("--repeats must be >= 3"));
            }
            let cfg = refine_config(&segment);
            let mut entries = Vec::new();
            for &n_points in &points {
                entries.push(bench_one(
                    &p, from, to, segment.puncture, segment.n2, n_points, repeats, &cfg,
                )?);
            }
            let report = BenchReport { command: "bench", results: entries };
            emit(&output, &report.render()?)
        }
        Command::Convergence { params, segment, z0, h0, h0p, output } => {
            let p = build_params(&params)?;
            let (from, to) = check_segment_args(&segment)?;
            let z0 = parse_c("z0", &z0)?;
            let h0 = parse_c("H0", &h0)?;
            let h0p = parse_c("H0p", &h0p)?;
            let cauchy = CauchyData::new(z0, h0, h0p, &p)?;
            // refinement off: the study measures the raw uniform-grid order
            let cfg = RefineConfig::none();
            let run = |n2: usize| {
                evaluate_interval(&p, &cauchy, from, to, segment.n1, n2, segment.puncture, &cfg)
            };
            let n2 = segment.n2;
            let resolutions = [n2, 2 * n2 - 1, 4 * n2 - 3];
            let coarse = run(resolutions[0])?;
            let mid = run(resolutions[1])?;
            let fine = run(resolutions[2])?;
            let rep = richardson_order(&coarse, &mid, &fine)?;
            let e1 = max_table_dev(&coarse, &mid);
            let e2 = max_table_dev(&mid, &fine);
            let report = ConvergenceReport {
                command: "convergence",
                resolutions,
                errors: [e1, e2],
                error_estimate: rep.max_abs_deviation,
                observed_order: rep.observed_order,
            };
            emit(&output, &report.render()?)
        }
    }
}

/// Max |ΔH| over the shared points of a table and its half-step refinement.
fn max_table_dev(coarse: &SolutionTable, fine: &SolutionTable) -> f64 {
    coarse
        .h
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (i, h)| m.max((h - fine.h[2 * i]).norm()))
}

#[allow(clippy::too_many_arguments)]
fn bench_one(
    p: &HeunParameters,
    from: Complex64,
    to: Complex64,
    puncture: f64,
    n2: usize,
    n_points: usize,
    repeats: usize,
    cfg: &RefineConfig,
) -> Result<BenchEntry, CliError> {
    // n1 chosen so n1·(n2−1)+1 ≈ the requested total row count
    let n1 = (n_points.saturating_sub(1) / (n2 - 1)).max(2);
    let mut timings = Vec::with_capacity(repeats);
    let mut tables = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let result = evaluate_regular_from_origin(p, from, to, puncture, n1, n2, cfg)?;
        timings.push(start.elapsed().as_secs_f64());
        tables = Some(result);
    }
    let (left, right) = tables.unwrap();
    // reference: same protocol at doubled per-segment resolution
    let n2f = 2 * (n2 - 1) + 1;
    let (left_f, right_f) = evaluate_regular_from_origin(p, from, to, puncture, n1, n2f, cfg)?;
    let err = max_table_dev(&left, &left_f).max(max_table_dev(&right, &right_f));
    timings.sort_by(f64::total_cmp);
    let median = timings[timings.len() / 2];
    Ok(BenchEntry {
        points: n_points,
        rows: left.points.len() + right.points.len(),
        wall_seconds_median: median,
        wall_seconds_min: timings[0],
        max_error_vs_refined: err,
    })
}
