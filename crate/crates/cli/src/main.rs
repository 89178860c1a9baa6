#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

mod commands;
mod error;
mod output;
mod params;
mod validate;

use error::{CliError, Result};
use output::{emit, to_json, Format, Table, SCHEMA_VERSION};
use params::{load_config, AnalyticParams, DesignParams, DispersionParams, SimulateParams, Suite, ValidateParams};

/// Worker threads for the parallel parts; defaults to one per core.
const THREADS_VAR: &str = "SUPERRAD_THREADS";

#[derive(Parser)]
#[command(name = "superrad", version, about = "Single-photon superradiance in extended atomic lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize the coupling matrix of a lattice (or the Dicke limit)
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: SimulateParams,
    },
    /// Exact lattice-sum dispersion chi(k), shift(k) along one direction
    Dispersion {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: DispersionParams,
    },
    /// Continuum predictions: chi_max and the closed-form I_d(k)
    Analytic {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: AnalyticParams,
    },
    /// Lattice and coupling parameters for a target rate and shift
    Design {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: DesignParams,
    },
    /// Run the numerics-versus-analytics cross-checks
    Validate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: ValidateParams,
    },
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    // only fails if a pool already exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    init_threads()?;
    match cli.command {
        Command::Simulate { config, params } => {
            let p = params.or(load_config(config.as_deref())?);
            emit(&commands::simulate(&p)?, p.output.as_deref())
        }
        Command::Dispersion { config, params } => {
            let p = params.or(load_config(config.as_deref())?);
            emit(&commands::dispersion(&p)?, p.output.as_deref())
        }
        Command::Analytic { config, params } => {
            let p = params.or(load_config(config.as_deref())?);
            emit(&commands::analytic(&p)?, p.output.as_deref())
        }
        Command::Design { config, params } => {
            let p = params.or(load_config(config.as_deref())?);
            emit(&commands::design(&p)?, p.output.as_deref())
        }
        Command::Validate { config, params } => {
            let p = params.or(load_config(config.as_deref())?);
            let seed = p.seed.unwrap_or(0);
            let reports = validate::run(p.suite.unwrap_or(Suite::All), seed)?;
            let passed = reports.iter().all(|r| r.passed);
            let bytes = match p.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "validate",
                    "seed": seed,
                    "passed": passed,
                    "suites": reports,
                }))?,
                Format::Csv => {
                    let mut t = Table::new(&["suite", "passed", "metric", "threshold"]);
                    for r in &reports {
                        t.push(vec![r.suite.into(), r.passed.into(), r.metric.into(), r.threshold.into()]);
                    }
                    t.to_csv()?
                }
            };
            emit(&bytes, p.output.as_deref())?;
            if passed {
                Ok(())
            } else {
                let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.suite).collect();
                Err(CliError::ValidationFailed(failed.join(", ")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
