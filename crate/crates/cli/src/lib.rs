//! Command-line front end for the critical relaxed stable matching solver.
//!
//! Every subcommand is a plain function returning a typed outcome, so tests
//! can drive them without a process; [`run`] renders outcomes and maps them
//! onto exit codes.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use critical_match::engine::{solve, EngineError, Solution};
use critical_match::gen::{random_instance, GenError, GenParams};
use critical_match::model::{parse_matching, ModelError};
use critical_match::oracle::{max_critical_rsm, OracleError, OracleResult, MAX_SIDE};
use critical_match::verify::{report, report_leveled, VerificationReport, VerifyError};
use critical_match::{parse_instance, Instance};
use serde::Serialize;
use thiserror::Error;

pub mod bench;
mod render;

pub use bench::{cmd_bench, write_csv, BenchConfig, ExperimentRow};

pub const LOG_ENV: &str = "CRITICAL_MATCH_LOG";

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    /// The input was fine but a check it was submitted for failed.
    CheckFailed = 1,
    InputError = 2,
    /// A result the solver guarantees did not hold: a bug.
    InvariantBreach = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ModelError },
    #[error("config {}: {source}", path.display())]
    Config {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("matching does not fit the instance: {0}")]
    Matching(#[from] VerifyError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("--oracle-max {0} is above the oracle limit of {MAX_SIDE}")]
    OracleLimit(usize),
    #[error("solver failed: {0}")]
    Engine(#[from] EngineError),
    #[error("cannot write output: {0}")]
    Write(#[from] io::Error),
    #[error("cannot write output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Engine(_) => Exit::InvariantBreach,
            _ => Exit::InputError,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "critical-match",
    version,
    about = "Critical relaxed stable matchings under two-sided ties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file and print the leveled matching.
    Solve {
        instance: PathBuf,
        /// Append a verification report; exit 3 if it fails.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a matching file against an instance.
    Verify {
        instance: PathBuf,
        matching: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Brute-force the best critical relaxed stable matching of a small instance.
    Oracle {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a random instance.
    Gen {
        #[command(flatten)]
        params: GenArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Solve a batch of random instances and print one CSV row per instance.
    Bench {
        /// Generator settings; `--seed` is the master seed of the batch.
        #[command(flatten)]
        params: GenArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Run the oracle on instances with at most this many vertices per side.
        #[arg(long, default_value_t = 6)]
        oracle_max: usize,
        /// Fill the elapsed_ms column (makes the output vary between runs).
        #[arg(long)]
        timing: bool,
    },
}

/// Generator settings: a JSON config file, overridden by individual flags.
#[derive(Debug, Clone, Default, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n_a: Option<usize>,
    #[arg(long)]
    pub n_b: Option<usize>,
    #[arg(long)]
    pub edge_probability: Option<f64>,
    #[arg(long)]
    pub tie_density: Option<f64>,
    #[arg(long)]
    pub critical_fraction_a: Option<f64>,
    #[arg(long)]
    pub critical_fraction_b: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl GenArgs {
    pub fn resolve(&self) -> Result<GenParams, CliError> {
        let mut p = match &self.config {
            Some(path) => {
                serde_json::from_str(&read(path)?).map_err(|source| CliError::Config {
                    path: path.clone(),
                    source,
                })?
            }
            None => GenParams::default(),
        };
        p.n_a = self.n_a.unwrap_or(p.n_a);
        p.n_b = self.n_b.unwrap_or(p.n_b);
        p.edge_probability = self.edge_probability.unwrap_or(p.edge_probability);
        p.tie_density = self.tie_density.unwrap_or(p.tie_density);
        p.critical_fraction_a = self.critical_fraction_a.unwrap_or(p.critical_fraction_a);
        p.critical_fraction_b = self.critical_fraction_b.unwrap_or(p.critical_fraction_b);
        p.seed = self.seed.unwrap_or(p.seed);
        p.validate()?;
        Ok(p)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOutcome {
    #[serde(flatten)]
    pub solution: Solution,
    pub verification: Option<VerificationReport>,
}

impl SolveOutcome {
    pub fn exit(&self) -> Exit {
        match &self.verification {
            Some(r) if !r.passed() => Exit::InvariantBreach,
            _ => Exit::Ok,
        }
    }
}

pub fn cmd_solve(path: &Path, verify: bool) -> Result<SolveOutcome, CliError> {
    let inst = load_instance(path)?;
    let solution = solve(&inst)?;
    let verification = if verify {
        Some(report_leveled(&inst, &solution.matching)?)
    } else {
        None
    };
    Ok(SolveOutcome {
        solution,
        verification,
    })
}

pub fn cmd_verify(instance: &Path, matching: &Path) -> Result<VerificationReport, CliError> {
    let inst = load_instance(instance)?;
    let m = parse_matching(&read(matching)?).map_err(|source| CliError::Parse {
        path: matching.to_path_buf(),
        source,
    })?;
    Ok(report(&inst, &m)?)
}

/// Exit status of `verify`: success means relaxed stable and critical.
pub fn verify_exit(r: &VerificationReport) -> Exit {
    if r.is_rsm && r.is_critical {
        Exit::Ok
    } else {
        Exit::CheckFailed
    }
}

pub fn cmd_oracle(path: &Path) -> Result<OracleResult, CliError> {
    Ok(max_critical_rsm(&load_instance(path)?)?)
}

pub fn cmd_gen(params: &GenArgs) -> Result<Instance, CliError> {
    Ok(random_instance(&params.resolve()?)?)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

/// Runs one parsed command line, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Exit, CliError> {
    match &cli.command {
        Command::Solve {
            instance,
            verify,
            format,
        } => {
            let outcome = cmd_solve(instance, *verify)?;
            let text = match format {
                Format::Text => render::solution(&outcome),
                Format::Json => json(&outcome),
            };
            out.write_all(text.as_bytes())?;
            Ok(outcome.exit())
        }
        Command::Verify {
            instance,
            matching,
            format,
        } => {
            let r = cmd_verify(instance, matching)?;
            let text = match format {
                Format::Text => render::report(&r),
                Format::Json => json(&r),
            };
            out.write_all(text.as_bytes())?;
            Ok(verify_exit(&r))
        }
        Command::Oracle { instance, format } => {
            let r = cmd_oracle(instance)?;
            let text = match format {
                Format::Text => render::oracle(&r),
                Format::Json => json(&r),
            };
            out.write_all(text.as_bytes())?;
            Ok(Exit::Ok)
        }
        Command::Gen { params, format } => {
            let inst = cmd_gen(params)?;
            let text = match format {
                Format::Text => inst.to_text(),
                Format::Json => inst.to_json() + "\n",
            };
            out.write_all(text.as_bytes())?;
            Ok(Exit::Ok)
        }
        Command::Bench {
            params,
            count,
            oracle_max,
            timing,
        } => {
            let config = BenchConfig {
                params: params.resolve()?,
                count: *count,
                oracle_max: *oracle_max,
                timing: *timing,
            };
            let rows = cmd_bench(&config)?;
            write_csv(&rows, &mut *out)?;
            let breaches: Vec<_> = rows
                .iter()
                .filter_map(|r| r.breach().map(|b| (r.seed, b)))
                .collect();
            for (seed, what) in &breaches {
                log::error!("instance seed {seed}: {what}");
            }
            Ok(if breaches.is_empty() {
                Exit::Ok
            } else {
                Exit::InvariantBreach
            })
        }
    }
}

/// Configures `env_logger` from [`LOG_ENV`] (`off`, `info` or `trace`;
/// unset means `off`). Returns the rejected value, if any.
pub fn init_logging() -> Option<String> {
    let raw = std::env::var(LOG_ENV).unwrap_or_default();
    let (level, rejected) = match raw.as_str() {
        "" | "off" => (log::LevelFilter::Off, None),
        "info" => (log::LevelFilter::Info, None),
        "trace" => (log::LevelFilter::Trace, None),
        _ => (log::LevelFilter::Off, Some(raw.clone())),
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
    rejected
}
