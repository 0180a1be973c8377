//! Command-line surface for the double twist knot slope computations:
//! root tables, slope sweeps, certified slope intervals, representation
//! checks, asymptotics reports, and SVG plots of `f(y)`.
//!
//! Exit codes: `0` success, `2` argument/notation parse errors, `3`
//! numeric failure (the message names the offending `y` where known).

mod svg;
mod table;

use clap::{Parser, Subcommand, ValueEnum};
use orderable_slopes::{cover, representation, rootcurve, slopes, Error, KnotSpec};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;
use table::{fmt_f64, json_artifact, ResultTable, RunConfig};

/// Parallelism cap; unset means one worker per logical CPU.
const THREADS_ENV: &str = "ORDERABLE_SLOPES_THREADS";

#[derive(Parser)]
#[command(
    name = "orderable-slopes",
    version,
    about = "Riley root curves, SL(2,R) representations and left orderable \
             surgery slopes of double twist knots C(2m,±2n), C(2m+1,-2n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// All roots of R(·, y) at one y, in branch order.
    Roots {
        /// Knot in Conway notation, e.g. "C(3,-4)".
        knot: String,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
    },
    /// Sweep the slope function f(y) along one branch.
    Sweep {
        knot: String,
        /// Branch index (0 = principal/extra root).
        #[arg(long, default_value_t = 0)]
        branch: usize,
        #[arg(long)]
        y_min: Option<f64>,
        #[arg(long, default_value_t = 1e6)]
        y_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Certify attained slope intervals with per-slope witnesses.
    Certify {
        knot: String,
        /// Certify only this branch (default: the family's certified set).
        #[arg(long)]
        branch: Option<usize>,
        #[arg(long)]
        y_min: Option<f64>,
        #[arg(long, default_value_t = 1e12)]
        y_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Witness residual bound.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Build and verify the representation at one (branch, y).
    CheckRep {
        knot: String,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 0)]
        branch: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Principal-branch convergence diagnostics (odd family only).
    Asymptotics {
        knot: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// SVG plot of f(y) with the target interval band.
    Plot {
        knot: String,
        #[arg(long, default_value_t = 0)]
        branch: usize,
        #[arg(long)]
        y_min: Option<f64>,
        #[arg(long, default_value_t = 1e6)]
        y_max: f64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Output path for the SVG.
        #[arg(long, default_value = "f_plot.svg")]
        out: String,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var(THREADS_ENV) {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: {THREADS_ENV} must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Parse/validation failures exit 2, numeric failures exit 3.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ConwaySyntax(_)
        | Error::TwoComponentLink { .. }
        | Error::ParametersTooSmall { .. }
        | Error::UnsupportedFamily { .. }
        | Error::InvalidSlope { .. }
        | Error::NoSuchBranch { .. }
        | Error::WrongFamily { .. }
        | Error::NonPositiveDegree { .. }
        | Error::YOutOfRange { .. } => 2,
        _ => 3,
    }
}

fn run(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Roots { knot, y, tol, format, out } => roots_cmd(&knot, y, tol, format, out),
        Command::Sweep { knot, branch, y_min, y_max, samples, tol, format, out } => {
            sweep_cmd(&knot, branch, y_min, y_max, samples, tol, format, out)
        }
        Command::Certify { knot, branch, y_min, y_max, samples, tol, out } => {
            certify_cmd(&knot, branch, y_min, y_max, samples, tol, out)
        }
        Command::CheckRep { knot, y, branch, tol, out } => {
            check_rep_cmd(&knot, y, branch, tol, out)
        }
        Command::Asymptotics { knot, tol, out } => asymptotics_cmd(&knot, tol, out),
        Command::Plot { knot, branch, y_min, y_max, samples, tol, out } => {
            plot_cmd(&knot, branch, y_min, y_max, samples, tol, &out)
        }
    }
}

/// Default sweep start: just inside the admissible range.
fn default_y_min(spec: &KnotSpec) -> f64 {
    spec.y_left() + 1e-6
}

fn emit(out: Option<&str>, content: &str) -> Result<(), Error> {
    match out {
        None => {
            std::io::stdout().write_all(content.as_bytes()).expect("stdout");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::ConwaySyntax(format!("cannot write {path}: {e}"))),
    }
}

fn roots_cmd(
    knot: &str,
    y: f64,
    tol: f64,
    format: Format,
    out: Option<String>,
) -> Result<(), Error> {
    let spec = KnotSpec::parse(knot)?;
    let sample = rootcurve::roots_at(&spec, y, tol)?;
    let config = RunConfig {
        version: env!("CARGO_PKG_VERSION"),
        command: "roots".into(),
        knot: spec.to_string(),
        branch: None,
        y: Some(y),
        y_min: None,
        y_max: None,
        samples: None,
        tol,
        format: fmt_name(format),
        out: out.clone(),
    };
    let mut t = ResultTable::new(
        config,
        format!("single y = {}", fmt_f64(y)),
        vec!["y", "branch", "x", "bracket", "residual"],
    );
    for (j, (&x, &r)) in sample.roots.iter().zip(&sample.residuals).enumerate() {
        // branch 0 has no bracket point of its own; echo NaN there
        let bracket = if j == 0 { f64::NAN } else { sample.brackets[j - 1] };
        t.rows.push(vec![y, j as f64, x, bracket, r]);
    }
    let rendered = match format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    };
    emit(out.as_deref(), &rendered)
}

#[allow(clippy::too_many_arguments)]
fn sweep_cmd(
    knot: &str,
    branch: usize,
    y_min: Option<f64>,
    y_max: f64,
    samples: usize,
    tol: f64,
    format: Format,
    out: Option<String>,
) -> Result<(), Error> {
    let spec = KnotSpec::parse(knot)?;
    let y_min = y_min.unwrap_or_else(|| default_y_min(&spec));
    let rows = parallel_sweep(&spec, branch, y_min, y_max, samples, tol)?;
    let config = RunConfig {
        version: env!("CARGO_PKG_VERSION"),
        command: "sweep".into(),
        knot: spec.to_string(),
        branch: Some(branch),
        y: None,
        y_min: Some(y_min),
        y_max: Some(y_max),
        samples: Some(samples),
        tol,
        format: fmt_name(format),
        out: out.clone(),
    };
    let mut t = ResultTable::new(
        config,
        format!(
            "{samples} points geometric in y - y_left, y_left = {}",
            fmt_f64(spec.y_left())
        ),
        vec!["y", "x", "logM", "logL", "f", "index", "residual"],
    );
    for s in rows {
        t.rows.push(vec![s.y, s.x, s.log_m, s.log_l, s.f, s.index as f64, s.residual]);
    }
    let rendered = match format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    };
    emit(out.as_deref(), &rendered)
}

/// Grid points are independent; chunk them across the pool and
/// reassemble in order, so the output is identical at any thread count.
fn parallel_sweep(
    spec: &KnotSpec,
    branch: usize,
    y_min: f64,
    y_max: f64,
    samples: usize,
    tol: f64,
) -> Result<Vec<slopes::SlopeSample>, Error> {
    let index = slopes::branch_index(spec, branch, tol)?;
    let grid = slopes::sweep_grid(spec, y_min, y_max, samples);
    let chunk = (grid.len() / 64).max(8);
    let parts: Result<Vec<Vec<slopes::SlopeSample>>, Error> = grid
        .par_chunks(chunk)
        .map(|chunk| slopes::sweep_over(spec, branch, chunk, index, tol))
        .collect();
    Ok(parts?.into_iter().flatten().collect())
}

#[derive(Serialize)]
struct CertifyResult {
    certificates: Vec<slopes::SlopeCertificate>,
    /// Union of the attained intervals over the certified branches.
    union_min: f64,
    union_max: f64,
}

fn certify_cmd(
    knot: &str,
    branch: Option<usize>,
    y_min: Option<f64>,
    y_max: f64,
    samples: usize,
    tol: f64,
    out: Option<String>,
) -> Result<(), Error> {
    let spec = KnotSpec::parse(knot)?;
    let y_min = y_min.unwrap_or_else(|| default_y_min(&spec));
    let branches = match branch {
        Some(b) => vec![b],
        None => slopes::certified_branches(&spec),
    };
    if branches.is_empty() {
        return Err(Error::NoSuchBranch { branch: 1, count: spec.branch_count() });
    }
    let certificates: Result<Vec<_>, Error> = branches
        .par_iter()
        .map(|&b| slopes::certify_interval(&spec, b, y_min, y_max, samples, tol))
        .collect();
    let certificates = certificates?;
    let union_min = certificates.iter().map(|c| c.attained_min).fold(f64::INFINITY, f64::min);
    let union_max =
        certificates.iter().map(|c| c.attained_max).fold(f64::NEG_INFINITY, f64::max);
    let config = RunConfig {
        version: env!("CARGO_PKG_VERSION"),
        command: "certify".into(),
        knot: spec.to_string(),
        branch,
        y: None,
        y_min: Some(y_min),
        y_max: Some(y_max),
        samples: Some(samples),
        tol,
        format: "json".into(),
        out: out.clone(),
    };
    let payload = CertifyResult { certificates, union_min, union_max };
    emit(out.as_deref(), &json_artifact(&config, &payload))
}

#[derive(Serialize)]
struct RepReport {
    y: f64,
    branch: usize,
    x: f64,
    meridian_eigenvalue: f64,
    relation_residual: f64,
    longitude_closed: f64,
    longitude_word: f64,
    longitude_rel_diff: f64,
    reducible: bool,
    index: i64,
}

fn check_rep_cmd(
    knot: &str,
    y: f64,
    branch: usize,
    tol: f64,
    out: Option<String>,
) -> Result<(), Error> {
    let spec = KnotSpec::parse(knot)?;
    let pt = rootcurve::branch_root(&spec, y, branch, 1e-10)?;
    let rep = representation::sample(&spec, pt.x, y, tol)?;
    let index = cover::rep_index(&spec, rep.m_eig, y)?;
    let report = RepReport {
        y,
        branch,
        x: rep.x,
        meridian_eigenvalue: rep.m_eig,
        relation_residual: rep.relation_residual,
        longitude_closed: rep.l_closed,
        longitude_word: rep.l_word,
        longitude_rel_diff: (rep.l_closed - rep.l_word).abs() / rep.l_closed.abs(),
        reducible: rep.reducible,
        index,
    };
    let config = RunConfig {
        version: env!("CARGO_PKG_VERSION"),
        command: "check-rep".into(),
        knot: spec.to_string(),
        branch: Some(branch),
        y: Some(y),
        y_min: None,
        y_max: None,
        samples: None,
        tol,
        format: "json".into(),
        out: out.clone(),
    };
    emit(out.as_deref(), &json_artifact(&config, &report))
}

fn asymptotics_cmd(knot: &str, tol: f64, out: Option<String>) -> Result<(), Error> {
    let spec = KnotSpec::parse(knot)?;
    let report = slopes::asymptotics_report(&spec, tol)?;
    let config = RunConfig {
        version: env!("CARGO_PKG_VERSION"),
        command: "asymptotics".into(),
        knot: spec.to_string(),
        branch: None,
        y: None,
        y_min: None,
        y_max: None,
        samples: None,
        tol,
        format: "json".into(),
        out: out.clone(),
    };
    emit(out.as_deref(), &json_artifact(&config, &report))
}

fn plot_cmd(
    knot: &str,
    branch: usize,
    y_min: Option<f64>,
    y_max: f64,
    samples: usize,
    tol: f64,
    out: &str,
) -> Result<(), Error> {
    let spec = KnotSpec::parse(knot)?;
    let y_min = y_min.unwrap_or_else(|| default_y_min(&spec));
    let rows = parallel_sweep(&spec, branch, y_min, y_max, samples, tol)?;
    let (lo, hi, _) = slopes::target_interval(&spec);
    let log_axis = y_max / y_min > 1e3;
    let title = format!("{spec} branch {branch}: slope function");
    let rendered = svg::render(&title, &rows, (lo, hi), log_axis);
    emit(Some(out), &rendered)
}

fn fmt_name(f: Format) -> String {
    match f {
        Format::Csv => "csv".into(),
        Format::Json => "json".into(),
    }
}
