//! Command-line front end: argument parsing, the serialisable [`RunConfig`]
//! and the four commands. Every output embeds the configuration and the
//! crate version, and is byte-identical for identical configurations.
//!
//! Text output is comma-separated with `#`-prefixed metadata lines; JSON
//! output is an object `{config, results, version}`.

use crate::error::{LupError, Result};
use crate::kernels::{KernelFamily, KernelSpec, SpaceTimePoint};
use crate::process::{par_map_indexed, simulate_lup};
use crate::rng::RngStream;
use crate::verify::{self, ScalingPoint, Suite, SuiteConfig, VerificationReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Version of the JSON layout.
pub const SCHEMA: &str = "lup-output/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Simulate,
    Kernel,
    Verify,
    LimitScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// Evaluation grid `lo:hi:count` for the first kernel argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

impl std::str::FromStr for Grid {
    type Err = LupError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || LupError::invalid("grid", format!("expected lo:hi:count, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(bad());
        };
        let grid = Grid {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
            count: count.trim().parse().map_err(|_| bad())?,
        };
        if grid.count == 0 || !(grid.lo.is_finite() && grid.hi.is_finite()) || grid.hi < grid.lo {
            return Err(bad());
        }
        Ok(grid)
    }
}

/// Everything a run depends on; a run is reproducible from this alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub t_max: usize,
    pub times: Vec<f64>,
    pub trajectories: Option<usize>,
    pub seed: u64,
    pub workers: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub suites: Vec<Suite>,
    pub gammas: Vec<f64>,
    pub tol: Option<f64>,
    pub family: KernelFamily,
    pub grid: Grid,
    /// Fixed second argument of the kernel; `None` evaluates on the diagonal.
    pub x: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            n: 2,
            t_max: 3,
            times: Vec::new(),
            trajectories: None,
            seed: 1,
            workers: None,
            format: Format::Csv,
            out: None,
            suites: Vec::new(),
            gammas: Vec::new(),
            tol: None,
            family: KernelFamily::LaguerreExtended,
            grid: Grid {
                lo: 0.0,
                hi: 10.0,
                count: 101,
            },
            x: None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lup",
    version,
    about = "Simulate the Laguerre unitary process, evaluate its kernels and verify its identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Sample trajectories and write their eigenvalues.
    Simulate(CliArgs),
    /// Evaluate an extended kernel on a grid.
    Kernel(CliArgs),
    /// Run verification suites; the exit code is 0 iff every blocking check passed.
    Verify(CliArgs),
    /// Scaling-limit error against γ for a log-log convergence plot.
    LimitScan(CliArgs),
}

#[derive(Debug, Args)]
pub struct CliArgs {
    /// Matrix size N.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Last simulated time.
    #[arg(long, default_value_t = 3)]
    pub t_max: usize,
    /// Recorded times (simulate) or `t,s` (kernel; one value means s = t).
    #[arg(long, value_delimiter = ',')]
    pub times: Vec<f64>,
    /// Trajectory count (simulate) or Monte Carlo sample override (verify).
    #[arg(long)]
    pub trajectories: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; defaults to all cores. Results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suites to run (comma-separated); all when absent.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// γ values for the scaling scan (comma-separated, ascending).
    #[arg(long, value_delimiter = ',')]
    pub gamma: Vec<f64>,
    /// Tolerance override (verify) or kernel accuracy (kernel).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Kernel family: laguerre, hermite, sine or airy.
    #[arg(long, default_value = "laguerre")]
    pub family: KernelFamily,
    /// Grid for the first kernel argument, `lo:hi:count`.
    #[arg(long, default_value = "0:10:101", allow_hyphen_values = true)]
    pub grid: Grid,
    /// Fixed second kernel argument; the diagonal is used when absent.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, a) = match cli.command {
            CliCommand::Simulate(a) => (Command::Simulate, a),
            CliCommand::Kernel(a) => (Command::Kernel, a),
            CliCommand::Verify(a) => (Command::Verify, a),
            CliCommand::LimitScan(a) => (Command::LimitScan, a),
        };
        RunConfig {
            command,
            n: a.n,
            t_max: a.t_max,
            times: a.times,
            trajectories: a.trajectories,
            seed: a.seed,
            workers: a.workers,
            format: a.format,
            out: a.out,
            suites: a.suite,
            gammas: a.gamma,
            tol: a.tol,
            family: a.family,
            grid: a.grid,
            x: a.x,
        }
    }
}

/// A rendered output document and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

/// Shortest round-trip decimal, in exponent form outside `[1e-4, 1e16)`.
pub fn fmt_real(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn metadata(cfg: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# lup {VERSION}");
    let _ = writeln!(s, "# seed {} N {}", cfg.seed, cfg.n);
    let _ = writeln!(
        s,
        "# config {}",
        serde_json::to_string(cfg).unwrap_or_default()
    );
    s
}

fn header(cfg: &RunConfig, columns: &[&str]) -> String {
    let mut s = metadata(cfg);
    let _ = writeln!(s, "{}", columns.join(","));
    s
}

fn document(cfg: &RunConfig, results: Value) -> String {
    let doc = json!({ "config": cfg, "results": results, "version": VERSION, "schema": SCHEMA });
    let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
    s.push('\n');
    s
}

fn integer_times(cfg: &RunConfig) -> Result<Vec<usize>> {
    if cfg.times.is_empty() {
        return Ok((1..=cfg.t_max).collect());
    }
    cfg.times
        .iter()
        .map(|&t| {
            if t >= 1.0 && t.fract() == 0.0 {
                Ok(t as usize)
            } else {
                Err(LupError::invalid(
                    "times",
                    format!("recorded times must be positive integers, got {t}"),
                ))
            }
        })
        .collect()
}

/// Default number of simulated trajectories.
pub const DEFAULT_TRAJECTORIES: usize = 100;

/// Eigenvalues of independent trajectories at the recorded times
/// (`1..=t_max` by default). Trajectory `i` uses its own derived stream.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<Output> {
    if cfg.n == 0 {
        return Err(LupError::invalid("n", "must be a positive integer"));
    }
    let times = integer_times(cfg)?;
    let count = cfg.trajectories.unwrap_or(DEFAULT_TRAJECTORIES);
    let tag = verify::tag("simulate");
    let trajs = par_map_indexed(count, cfg.workers, |i| {
        let mut rng = RngStream::derive(cfg.seed, tag, i as u64);
        simulate_lup(cfg.n, cfg.t_max, &times, &mut rng)
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let rows = trajs.iter().enumerate().flat_map(|(id, tr)| {
        tr.times()
            .iter()
            .zip(tr.eigenvalues())
            .flat_map(move |(&t, e)| e.iter().enumerate().map(move |(k, &v)| (id, t, k, v)))
    });
    let text = match cfg.format {
        Format::Csv => {
            let mut s = header(cfg, &["trajectory_id", "time", "eigenvalue_index", "value"]);
            for (id, t, k, v) in rows {
                let _ = writeln!(s, "{id},{t},{k},{}", fmt_real(v));
            }
            s
        }
        Format::Json => {
            let results: Vec<Value> = rows
                .map(|(id, t, k, v)| json!({ "trajectory_id": id, "time": t, "eigenvalue_index": k, "value": v }))
                .collect();
            document(cfg, Value::Array(results))
        }
    };
    Ok(Output { text, exit_code: 0 })
}

/// `(y, t, x, s, K)` on the grid of `y`, with `x` fixed or equal to `y`.
pub fn cmd_kernel(cfg: &RunConfig) -> Result<Output> {
    let (t, s) = match cfg.times[..] {
        [] => (1.0, 1.0),
        [t] => (t, t),
        [t, s] => (t, s),
        _ => return Err(LupError::invalid("times", "give `t` or `t,s`")),
    };
    let spec = KernelSpec::new(
        cfg.family,
        cfg.n,
        cfg.tol.unwrap_or(KernelSpec::DEFAULT_TOLERANCE),
    )?;
    let rows = cfg
        .grid
        .points()
        .into_iter()
        .map(|y| {
            let x = cfg.x.unwrap_or(y);
            Ok((
                y,
                x,
                spec.evaluate(SpaceTimePoint::new(y, t), SpaceTimePoint::new(x, s))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let text = match cfg.format {
        Format::Csv => {
            let mut out = header(cfg, &["y", "t", "x", "s", "K"]);
            for (y, x, k) in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_real(y),
                    fmt_real(t),
                    fmt_real(x),
                    fmt_real(s),
                    fmt_real(k)
                );
            }
            out
        }
        Format::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|&(y, x, k)| json!({ "y": y, "t": t, "x": x, "s": s, "K": k }))
                .collect();
            document(cfg, Value::Array(results))
        }
    };
    Ok(Output { text, exit_code: 0 })
}

/// Run the selected suites; exit code 0 iff no blocking check failed. The
/// JSON report lists one record per check.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Output> {
    let suite_cfg = SuiteConfig {
        seed: cfg.seed,
        workers: cfg.workers,
        tol_override: cfg.tol,
        trajectories: cfg.trajectories,
    };
    let reports = verify::run_suite(&cfg.suites, &suite_cfg)?;
    let exit_code = i32::from(reports.iter().any(VerificationReport::is_blocking_failure));
    let text = match cfg.format {
        Format::Json => document(cfg, serde_json::to_value(&reports).unwrap_or_default()),
        Format::Csv => {
            let mut s = header(
                cfg,
                &[
                    "suite",
                    "identity",
                    "observed_error",
                    "tolerance",
                    "passed",
                    "blocking",
                    "effort",
                ],
            );
            for r in &reports {
                let suite = r.params.get("suite").and_then(Value::as_str).unwrap_or("");
                let _ = writeln!(
                    s,
                    "{suite},{},{},{},{},{},{}",
                    r.identity,
                    fmt_real(r.observed_error),
                    fmt_real(r.tolerance),
                    r.passed,
                    r.blocking,
                    r.effort
                );
            }
            s
        }
    };
    Ok(Output { text, exit_code })
}

/// `(γ, test point, error)` rows of the Laguerre → Hermite scaling limit at
/// the default test points.
pub fn cmd_limit_scan(cfg: &RunConfig) -> Result<Output> {
    if cfg.gammas.is_empty() {
        return Err(LupError::invalid(
            "gamma",
            "give at least one γ value, e.g. --gamma 100,1000,10000",
        ));
    }
    let points: Vec<ScalingPoint> = verify::default_scaling_points();
    let rows = verify::scaling_errors(cfg.n, &cfg.gammas, &points)?;
    let text = match cfg.format {
        Format::Csv => {
            let mut s = metadata(cfg);
            for (i, p) in points.iter().enumerate() {
                let _ = writeln!(s, "# point {i}: y {} x {} t {} s {}", p.y, p.x, p.t, p.s);
            }
            s.push_str("gamma,point,error\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", fmt_real(r.gamma), r.point, fmt_real(r.error));
            }
            s
        }
        Format::Json => document(cfg, json!({ "points": points, "rows": rows })),
    };
    Ok(Output { text, exit_code: 0 })
}

/// Run the configured command and write its output (standard output when
/// no path is set). Returns the exit code.
pub fn execute(cfg: &RunConfig) -> Result<i32> {
    let out = match cfg.command {
        Command::Simulate => cmd_simulate(cfg)?,
        Command::Kernel => cmd_kernel(cfg)?,
        Command::Verify => cmd_verify(cfg)?,
        Command::LimitScan => cmd_limit_scan(cfg)?,
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, &out.text)
            .map_err(|e| LupError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{}", out.text),
    }
    Ok(out.exit_code)
}
