//! Library side of the `ptwell` command: argument types, run configuration
//! and the table-producing commands.

pub mod args;
pub mod commands;
pub mod config;

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use ptwell::Table;

pub use args::{Cli, Command, CommandKind, RunArgs};
pub use commands::{run_figures, run_residual, run_spectrum, run_verify, run_wavefunction, VerifyReport};
pub use config::RunConfig;

/// A failed run, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Invalid configuration: exit 2.
    Config(anyhow::Error),
    /// Numerical non-convergence: exit 3.
    NoConvergence(anyhow::Error),
    /// I/O failure: exit 1.
    Io(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::NoConvergence(_) => 3,
        }
    }

    pub fn from_core(e: ptwell::Error) -> Self {
        use ptwell::Error as E;
        match e {
            E::SeriesNonConvergence { .. } | E::NonFinite(_) | E::DegenerateConnection(_) | E::OutOfDomain(_) => {
                Failure::NoConvergence(e.into())
            }
            _ => Failure::Config(e.into()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(e) | Failure::NoConvergence(e) | Failure::Io(e) => write!(f, "{e:#}"),
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    }
    .map_err(Failure::Io)
}

fn emit(config: &RunConfig, table: &Table) -> Result<(), Failure> {
    write_output(config.output_path.as_deref().map(Path::new), &table.emit(config.format))
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Result<(), Failure> {
    let (kind, args) = cli.command.split();
    let config = RunConfig::from_args(kind, args)?;
    for w in config.params.warnings() {
        eprintln!("warning: {w}");
    }
    match kind {
        CommandKind::Spectrum => emit(&config, &run_spectrum(&config)?),
        CommandKind::Wavefunction => emit(&config, &run_wavefunction(&config)?),
        CommandKind::Residual => emit(&config, &run_residual(&config)?),
        CommandKind::Verify => {
            let report = run_verify(&config)?;
            emit(&config, &report.table)?;
            if report.all_passed {
                Ok(())
            } else {
                Err(Failure::NoConvergence(anyhow!(
                    "shooting did not reproduce every closed-form level within rel. error {}",
                    commands::VERIFY_TOLERANCE
                )))
            }
        }
        CommandKind::Figures => {
            let figures = run_figures(&config)?;
            if config.figure.is_some() {
                return emit(&config, &figures[0].1);
            }
            let dir = config
                .output_path
                .as_deref()
                .ok_or_else(|| Failure::Config(anyhow!("figures without --figure needs --out DIR")))?;
            fs::create_dir_all(dir)
                .with_context(|| format!("creating {dir}"))
                .map_err(Failure::Io)?;
            for (id, table) in &figures {
                let path = Path::new(dir).join(format!("figure{id}.{}", config.format.extension()));
                write_output(Some(&path), &table.emit(config.format))?;
            }
            Ok(())
        }
    }
}
