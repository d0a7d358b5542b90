//! Command-line front end. Parsing and rendering live here so the thin
//! `hardy` binary and the tests share one code path.
//!
//! CSV output uses `,` separators, `.` decimals and LF line endings. Numbers
//! are written with Rust's shortest round-trip formatting, so a given command
//! line always produces the same bytes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::apparatus::{simulate_run, DEFAULT_COUNTS};
use crate::error::Error;
use crate::ladder::{
    evaluate_ladder, ladder_angles, ladder_terms, optimize_t, LadderConfig, LadderTerm,
};
use crate::lhv::{enumerate_strategies, lhv_max};
use crate::quantum::HARDY_PHASE;

/// Largest `K` accepted by `lhv`; one more would exceed the enumeration guard.
const LHV_MAX_K: u32 = 10;

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "hardy", version, about = "Hardy ladder nonlocality laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Analyzer angles θ_0..θ_K for a ladder.
    Angles(AnglesArgs),
    /// Amplitude ratio t* maximizing S_K.
    Optimize(OptimizeArgs),
    /// Sweep S_K and the Hardy fraction over t.
    Scan(ScanArgs),
    /// Finite-count simulation of the full ladder experiment.
    Simulate(SimulateArgs),
    /// Exhaustive local-hidden-variable bound of S_K.
    Lhv(LhvArgs),
    /// Simulated K=1 / K=2 probability table at the optimal t.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ModelArgs {
    /// Relative phase of the |LL> term, radians.
    #[arg(long, default_value_t = HARDY_PHASE, allow_negative_numbers = true)]
    pub phi: f64,
    /// Two-photon interference visibility in [0, 1].
    #[arg(long, default_value_t = 1.0, value_parser = parse_visibility)]
    pub visibility: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SamplingArgs {
    /// Coincidences per setting pair.
    #[arg(long, default_value_t = DEFAULT_COUNTS, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct AnglesArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(long, value_parser = parse_ratio)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(long, default_value_t = 0.01, value_parser = parse_ratio)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1.0, value_parser = parse_ratio)]
    pub t_max: f64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(2..))]
    pub steps: u32,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(long, value_parser = parse_ratio)]
    pub t: f64,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct LhvArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=i64::from(LHV_MAX_K)))]
    pub k: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_ratio(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= 1.0 {
        Ok(t)
    } else {
        Err(format!("t must lie in (0, 1], got {s}"))
    }
}

fn parse_visibility(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("visibility must lie in [0, 1], got {s}"))
    }
}

/// Parses `argv` (including the program name) into a validated command.
pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    if let Command::Scan(scan) = &cli.command {
        if scan.t_min >= scan.t_max {
            return Err(Cli::command().error(
                ErrorKind::ValueValidation,
                format!(
                    "--t-min ({}) must be below --t-max ({})",
                    scan.t_min, scan.t_max
                ),
            ));
        }
    }
    Ok(cli.command)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("failed to write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Serialize)]
struct AngleEntry {
    k: usize,
    radians: f64,
    degrees: f64,
}

fn angle_entries(thetas: &[f64]) -> Vec<AngleEntry> {
    thetas
        .iter()
        .enumerate()
        .map(|(k, &radians)| AngleEntry {
            k,
            radians,
            degrees: radians.to_degrees(),
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Produces the full text a command emits.
pub fn render(cmd: &Command) -> Result<String, CliError> {
    match cmd {
        Command::Angles(args) => render_angles(args),
        Command::Optimize(args) => render_optimize(args),
        Command::Scan(args) => render_scan(args),
        Command::Simulate(args) => render_simulate(args),
        Command::Lhv(args) => render_lhv(args),
        Command::Table(args) => render_table(args),
    }
}

fn render_angles(args: &AnglesArgs) -> Result<String, CliError> {
    let angles = ladder_angles(args.k as usize, args.t)?;
    match args.format {
        Format::Csv => {
            let mut out = String::from("k,theta_rad\n");
            for (k, theta) in angles.thetas.iter().enumerate() {
                writeln!(out, "{k},{theta}").unwrap();
            }
            Ok(out)
        }
        Format::Json => to_json(&json!({
            "config": { "k": args.k, "t": args.t },
            "angles": angle_entries(&angles.thetas),
        })),
    }
}

fn render_optimize(args: &OptimizeArgs) -> Result<String, CliError> {
    let k = args.k as usize;
    let (t_star, s_star) = optimize_t(k, args.model.visibility, args.model.phi)?;
    let angles = ladder_angles(k, t_star)?;
    to_json(&json!({
        "config": { "k": k, "visibility": args.model.visibility, "phi": args.model.phi },
        "t_star": t_star,
        "s_star": s_star,
        "angles": angle_entries(&angles.thetas),
    }))
}

#[derive(Serialize)]
struct ScanRow {
    t: f64,
    #[serde(rename = "P_K")]
    hardy_fraction: f64,
    #[serde(rename = "S_K")]
    s_value: f64,
    thetas: Vec<f64>,
}

/// Evenly spaced `t` values from `t_min` to `t_max` inclusive.
pub fn scan_grid(t_min: f64, t_max: f64, steps: u32) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                t_max
            } else {
                t_min + (t_max - t_min) * i as f64 / last
            }
        })
        .collect()
}

fn render_scan(args: &ScanArgs) -> Result<String, CliError> {
    let k = args.k as usize;
    let rows = scan_grid(args.t_min, args.t_max, args.steps)
        .into_iter()
        .map(|t| {
            let report = evaluate_ladder(
                LadderConfig::new(k, t)?,
                args.model.phi,
                args.model.visibility,
            )?;
            Ok(ScanRow {
                t,
                hardy_fraction: report.hardy_fraction,
                s_value: report.s_value,
                thetas: ladder_angles(k, t)?.thetas,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match args.format {
        Format::Csv => {
            let mut out = String::from("t,P_K,S_K");
            for i in 0..=k {
                write!(out, ",theta_{i}").unwrap();
            }
            out.push('\n');
            for row in &rows {
                write!(out, "{},{},{}", row.t, row.hardy_fraction, row.s_value).unwrap();
                for theta in &row.thetas {
                    write!(out, ",{theta}").unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => to_json(&json!({
            "config": {
                "k": k,
                "t_min": args.t_min,
                "t_max": args.t_max,
                "steps": args.steps,
                "visibility": args.model.visibility,
                "phi": args.model.phi,
            },
            "rows": rows,
        })),
    }
}

const ERROR_MODEL: &str =
    "binomial sigma = sqrt(p(1-p)/C_TOT) per term; settings treated as independent";

fn render_simulate(args: &SimulateArgs) -> Result<String, CliError> {
    let k = args.k as usize;
    let config = LadderConfig::new(k, args.t)?;
    let run = simulate_run(
        config,
        args.model.phi,
        args.model.visibility,
        args.sampling.n,
        args.sampling.seed,
    )?;
    let angles = ladder_angles(k, args.t)?;
    let terms = ladder_terms(k);
    let report = &run.report;
    let sigma = report.uncertainties.as_ref().map(|u| u.s_value);

    let probabilities: Vec<_> = terms
        .iter()
        .zip(&run.estimates)
        .map(|(term, est)| json!({ "term": term.to_string(), "value": est.p }))
        .collect();
    let term_sigmas: Vec<_> = terms
        .iter()
        .zip(&run.estimates)
        .map(|(term, est)| json!({ "term": term.to_string(), "sigma": est.sigma }))
        .collect();
    to_json(&json!({
        "config": {
            "k": k,
            "t": args.t,
            "phi": args.model.phi,
            "visibility": args.model.visibility,
            "n": args.sampling.n,
        },
        "angles": angle_entries(&angles.thetas),
        "probabilities": probabilities,
        "s_value": report.s_value,
        "uncertainties": {
            "terms": term_sigmas,
            "s_value": sigma,
            "model": ERROR_MODEL,
        },
        "counts": run.records,
        "seed": args.sampling.seed,
    }))
}

fn render_lhv(args: &LhvArgs) -> Result<String, CliError> {
    let k = args.k as usize;
    let strategies = enumerate_strategies(k)?.count();
    to_json(&json!({
        "k": k,
        "strategies": strategies,
        "lhv_max": lhv_max(k)?,
    }))
}

/// Term order used by the printed table: top, side terms from the top of the
/// ladder down, bottom.
fn table_order(k: usize) -> Vec<LadderTerm> {
    let mut terms = vec![LadderTerm::top(k)];
    for step in (1..=k).rev() {
        terms.push(LadderTerm::upper_left(step));
        terms.push(LadderTerm::upper_right(step));
    }
    terms.push(LadderTerm::bottom());
    terms
}

fn table_column(k: usize, args: &TableArgs) -> Result<(String, Vec<(String, String)>), CliError> {
    let (t_star, _) = optimize_t(k, 1.0, args.model.phi)?;
    let config = LadderConfig::new(k, t_star)?;
    let run = simulate_run(
        config,
        args.model.phi,
        args.model.visibility,
        args.sampling.n,
        args.sampling.seed,
    )?;
    let by_term = ladder_terms(k);

    let mut rows = Vec::new();
    for term in table_order(k) {
        let idx = by_term
            .iter()
            .position(|t| *t == term)
            .expect("term present");
        let est = run.estimates[idx];
        rows.push((term.to_string(), format!("{:.3}±{:.3}", est.p, est.sigma)));
    }
    let sigma_s = run.report.uncertainties.as_ref().map_or(0.0, |u| u.s_value);
    rows.push((
        format!("S{k}"),
        format!("{:.3}±{:.3}", run.report.s_value, sigma_s),
    ));
    Ok((format!("K={k}, t={t_star:.4}"), rows))
}

fn render_table(args: &TableArgs) -> Result<String, CliError> {
    let (head1, left) = table_column(1, args)?;
    let (head2, right) = table_column(2, args)?;
    let mut out = String::new();
    writeln!(
        out,
        "# simulated: V={}, phi={}, N={} per setting, seed={}",
        args.model.visibility, args.model.phi, args.sampling.n, args.sampling.seed
    )
    .unwrap();
    writeln!(out, "{:<30}{}", head1, head2).unwrap();
    for i in 0..left.len().max(right.len()) {
        let cell = |col: &[(String, String)]| {
            col.get(i)
                .map(|(label, value)| format!("{label:<12}{value}"))
                .unwrap_or_default()
        };
        let line = format!("{:<30}{}", cell(&left), cell(&right));
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    Ok(out)
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Angles(a) => a.out.as_ref(),
        Command::Optimize(a) => a.out.as_ref(),
        Command::Scan(a) => a.out.as_ref(),
        Command::Simulate(a) => a.out.as_ref(),
        Command::Lhv(a) => a.out.as_ref(),
        Command::Table(a) => a.out.as_ref(),
    }
}

/// Runs a command, writing to its `--out` file or to `stdout`.
pub fn execute(cmd: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = render(cmd)?;
    match output_path(cmd) {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Entry point returning the process exit status: 0 on success, 2 on usage
/// errors, 1 on runtime failures.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cmd = match parse_args(argv) {
        Ok(cmd) => cmd,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cmd, &mut io::stdout().lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
