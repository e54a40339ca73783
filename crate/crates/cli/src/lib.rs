//! Command-line front end: each subcommand maps onto one library
//! computation and writes a JSON or CSV report.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{number, ErrorInfo, Report, ResultEntry, Table};

#[derive(Debug, Parser)]
#[command(name = "tunneling", version, about = "Instanton, zeta-determinant and level-splitting calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format (sweep defaults to csv, everything else to json)
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,

    /// Write the report here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Quadrature tolerance (absolute and relative)
    #[arg(long, global = true, value_name = "X", value_parser = positive_real)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euclidean action of the instanton
    Action(OmegaArgs),
    /// Instanton path, velocity, zero mode and stability potential at one time
    Profile(ProfileArgs),
    /// Bound and scattering spectrum of the reflectionless operator
    Spectrum(SpectrumArgs),
    /// Regularized zeta function and its derivative at zero
    Zeta(ZetaArgs),
    /// Reduced determinant ratios
    DetRatio(DetRatioArgs),
    /// Harmonic-oscillator amplitude and its mode product
    Oscillator(OscillatorArgs),
    /// Ground-state splitting from the instanton gas
    Splitting(SplittingArgs),
    /// Splitting table over a range of frequencies
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OmegaArgs {
    #[arg(long, value_parser = finite_real)]
    pub omega: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ProfileArgs {
    #[arg(long, value_parser = finite_real)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite_real)]
    pub tau: f64,
    /// Instanton centre
    #[arg(long = "tau-c", default_value_t = 0.0, value_parser = finite_real)]
    pub tau_c: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 2)]
    pub ell: u32,
    /// Scattering wavenumber
    #[arg(long, value_parser = finite_real)]
    pub k: Option<f64>,
    /// Grid half-width
    #[arg(long = "L", default_value_t = 15.0, value_parser = finite_real)]
    pub half_width: f64,
    /// Interior grid points
    #[arg(long = "N", default_value_t = 4000)]
    pub points: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ZetaArgs {
    #[arg(long, default_value_t = 2)]
    pub ell: u32,
    #[arg(long, default_value_t = 0.0, value_parser = finite_real)]
    pub s: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct DetRatioArgs {
    #[arg(long, default_value_t = 2)]
    pub ell: u32,
    #[arg(long, value_parser = finite_real)]
    pub omega: Option<f64>,
    /// Box half-width for the finite-box estimate
    #[arg(long = "L", value_parser = finite_real)]
    pub half_width: Option<f64>,
    #[arg(long = "N")]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OscillatorArgs {
    #[arg(long, value_parser = finite_real)]
    pub nu: f64,
    #[arg(long = "T", value_parser = finite_real)]
    pub t: f64,
    /// Number of modes in the truncated product
    #[arg(long = "N", default_value_t = 10_000)]
    pub modes: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SplittingArgs {
    #[arg(long, value_parser = finite_real)]
    pub omega: f64,
    /// Also diagonalise the double-well Hamiltonian on a grid
    #[arg(long)]
    pub with_oracle: bool,
    /// Euclidean time for the transition amplitudes
    #[arg(long = "T", value_parser = finite_real)]
    pub t: Option<f64>,
    #[arg(long = "L", value_parser = finite_real)]
    pub half_width: Option<f64>,
    #[arg(long = "N")]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long = "omega-min", value_parser = finite_real)]
    pub omega_min: f64,
    #[arg(long = "omega-max", value_parser = finite_real)]
    pub omega_max: f64,
    #[arg(long = "omega-step", value_parser = positive_real)]
    pub omega_step: f64,
}

fn finite_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v = finite_real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

impl Cli {
    pub fn format(&self) -> OutputFormat {
        self.output.unwrap_or(match self.command {
            Command::Sweep(_) => OutputFormat::Csv,
            _ => OutputFormat::Json,
        })
    }
}

/// Runs the subcommand. The exit code is 0 on success and 1 when the
/// computation failed, in which case the report carries the error.
pub fn run(cli: &Cli) -> (Report, i32) {
    let report = commands::dispatch(cli);
    let code = if report.error.is_some() { 1 } else { 0 };
    (report, code)
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    }
}

/// Runs, renders and writes the report; returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let (report, code) = run(cli);
    let text = render(&report, cli.format());
    if let Some(err) = &report.error {
        eprintln!("error: {}: {}", err.kind, err.message);
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            1
        }
    }
}
