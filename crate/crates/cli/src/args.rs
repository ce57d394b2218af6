use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptwell::{Sign, TableFormat};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "ptwell",
    version,
    about = "Exact spectra, shooting checks and figure tables for the PT-symmetric Poschl-Teller well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Spectrum,
    Wavefunction,
    Verify,
    Figures,
    Residual,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energies of the requested branches.
    Spectrum(RunArgs),
    /// Samples of one closed-form eigenfunction along the contour.
    Wavefunction(RunArgs),
    /// Compare closed-form energies with the shooting oracle (exit 3 on mismatch).
    Verify(RunArgs),
    /// Tables behind the four paradox figures.
    Figures(RunArgs),
    /// Scaled ODE residual of the closed-form eigenfunctions.
    Residual(RunArgs),
}

impl Command {
    pub fn split(&self) -> (CommandKind, &RunArgs) {
        match self {
            Command::Spectrum(a) => (CommandKind::Spectrum, a),
            Command::Wavefunction(a) => (CommandKind::Wavefunction, a),
            Command::Verify(a) => (CommandKind::Verify, a),
            Command::Figures(a) => (CommandKind::Figures, a),
            Command::Residual(a) => (CommandKind::Residual, a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Json => TableFormat::Json,
        }
    }
}

pub fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
        "-" | "-1" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// Coupling of the 1/cos^2 x term [default: 2.5].
    #[arg(long = "A", conflicts_with = "alpha")]
    pub a: Option<f64>,
    /// Coupling of the 1/sin^2 x term [default: 1.25].
    #[arg(long = "B", conflicts_with = "beta")]
    pub b: Option<f64>,
    /// alpha = A - 1/2.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// beta = B - 1/2.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Left exponent sign (+ or -); give together with --tau.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    pub sigma: Option<Sign>,
    /// Right exponent sign (+ or -); give together with --sigma.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    pub tau: Option<Sign>,
    /// All four branches (the default when no branch is given).
    #[arg(long, conflicts_with_all = ["sigma", "tau"])]
    pub all_branches: bool,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    /// State index for `wavefunction`.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Contour shift: x = t - i epsilon.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Start offset of the shots from both ends.
    #[arg(long, default_value_t = 1e-4)]
    pub delta: f64,
    /// RK4 steps per side; for `residual`, the number of sample intervals [default: 1000 there].
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub e_min: Option<f64>,
    #[arg(long)]
    pub e_max: Option<f64>,
    #[arg(long)]
    pub scan_step: Option<f64>,
    /// Figure to emit (1-4); all four when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub figure: Option<u8>,
    /// Samples along the contour for `wavefunction`.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output file; a directory for `figures` without --figure. Stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accept alpha <= 0 or beta <= 0.
    #[arg(long)]
    pub unsafe_couplings: bool,
}
