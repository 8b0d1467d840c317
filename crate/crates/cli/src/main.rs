//! Command-line front end for the central-configuration toolkit: closed-form
//! and solver-based vertex masses, identity and spectrum checks, residual
//! verification of configuration files, the collinear three-body balance,
//! and trajectory integration with conservation reporting.

mod commands;
mod error;
mod input;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use error::CliError;
use polycc::dynamics::Method;
use report::{CommandOutput, Format};
use std::path::PathBuf;
use std::str::FromStr;

/// Inclusive range of polygon sizes: `LO..HI`, or a single size `N`.
#[derive(Debug, Clone, Copy)]
struct SizeRange {
    lo: usize,
    hi: usize,
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once("..") {
            Some((a, b)) => {
                let lo = a
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range start {a:?}"))?;
                let hi = b
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad range end {b:?}"))?;
                Ok(SizeRange { lo, hi })
            }
            None => {
                let n = s.trim().parse().map_err(|_| format!("bad size {s:?}"))?;
                Ok(SizeRange { lo: n, hi: n })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Classical fourth-order Runge-Kutta.
    Rk4,
    /// Symplectic kick-drift-kick leapfrog.
    Leapfrog,
}

impl From<MethodArg> for Method {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Rk4 => Method::Rk4,
            MethodArg::Leapfrog => Method::Leapfrog,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "polycc",
    version,
    about = "Central configurations of the planar polygon-plus-center gravitational problem",
    propagate_version = true
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for randomized sweeps; fixed seeds give byte-identical reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check both vertex summation identities over a range of polygon sizes.
    Identities(IdentitiesArgs),
    /// Equal vertex mass from the closed form, cross-checked spectrally.
    Masses(MassesArgs),
    /// Stationarity residual of a configuration file.
    Verify(VerifyArgs),
    /// Solve for vertex masses from randomized starting points.
    Solve(SolveArgs),
    /// Interior position of the collinear three-body balance.
    Euler(EulerArgs),
    /// Integrate a configuration and write the trajectory to CSV.
    Simulate(SimulateArgs),
    /// Interaction-matrix eigenvalues and zero-mode classification.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Inclusive size range `LO..HI` (or a single size), within 2..1024.
    #[arg(long, value_name = "LO..HI")]
    n: SizeRange,

    /// Largest allowed |lhs - rhs| per identity.
    #[arg(long = "tol-identity", value_name = "TOL", default_value_t = 1e-11)]
    tolerance: f64,
}

#[derive(Args)]
struct MassesArgs {
    /// Number of polygon vertices (>= 2).
    #[arg(long)]
    n: usize,

    /// Squared rotation rate omega^2.
    #[arg(long = "omega2", value_name = "OMEGA2")]
    omega_squared: f64,

    /// Mass of the central body (>= 0).
    #[arg(long = "center", value_name = "MASS")]
    center_mass: f64,

    /// Largest allowed relative gap between the two computations.
    #[arg(long = "tol-agreement", value_name = "TOL", default_value_t = 1e-12)]
    tolerance: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Configuration file (JSON).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,

    /// Squared rotation rate; overrides omega_squared from the file.
    #[arg(long = "omega2", value_name = "OMEGA2")]
    omega_squared: Option<f64>,

    /// Largest residual sup norm accepted as stationary.
    #[arg(long = "tol-residual", value_name = "TOL", default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Args)]
struct SolveArgs {
    /// Number of polygon vertices (>= 2).
    #[arg(long)]
    n: usize,

    /// Squared rotation rate omega^2.
    #[arg(long = "omega2", value_name = "OMEGA2")]
    omega_squared: f64,

    /// Mass of the central body (>= 0).
    #[arg(long = "center", value_name = "MASS")]
    center_mass: f64,

    /// Number of randomized starting points.
    #[arg(long = "seeds", value_name = "COUNT", default_value_t = 20)]
    count: usize,

    /// Largest deviation from the mean accepted as equal-mass.
    #[arg(long = "tol-equal", value_name = "TOL", default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EulerArgs {
    /// Mass of the left outer body.
    m1: f64,
    /// Mass of the right outer body.
    m2: f64,
    /// Mass of the interior body.
    m3: f64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Configuration file (JSON).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,

    /// Rotation rate omega; defaults to sqrt(omega_squared) from the file.
    #[arg(long, value_name = "OMEGA")]
    omega: Option<f64>,

    /// Integration step; defaults to one period divided by --steps.
    #[arg(long, value_name = "DT")]
    step: Option<f64>,

    /// Number of integration steps.
    #[arg(long, default_value_t = 4000)]
    steps: usize,

    /// Integration method.
    #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
    method: MethodArg,

    /// Output CSV file for the trajectory.
    #[arg(long, value_name = "FILE")]
    output: PathBuf,

    /// Largest rigid-rotation error accepted.
    #[arg(long = "tol-rigid", value_name = "TOL", default_value_t = 1e-5)]
    tolerance: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Number of polygon vertices (>= 2; classification needs >= 4).
    #[arg(long)]
    n: usize,
}

fn dispatch(command: Command, seed: u64) -> Result<CommandOutput, CliError> {
    match command {
        Command::Identities(args) => {
            commands::identities(args.n.lo, args.n.hi, args.tolerance, seed)
        }
        Command::Masses(args) => commands::masses(
            args.n,
            args.omega_squared,
            args.center_mass,
            args.tolerance,
            seed,
        ),
        Command::Verify(args) => {
            commands::verify(&args.config, args.omega_squared, args.tolerance, seed)
        }
        Command::Solve(args) => commands::solve(
            args.n,
            args.omega_squared,
            args.center_mass,
            args.count,
            args.tolerance,
            seed,
        ),
        Command::Euler(args) => commands::euler(args.m1, args.m2, args.m3, seed),
        Command::Simulate(args) => commands::simulate(
            &args.config,
            args.omega,
            args.step,
            args.steps,
            args.method.into(),
            &args.output,
            args.tolerance,
            seed,
        ),
        Command::Spectrum(args) => commands::spectrum(args.n, seed),
    }
}

fn main() {
    let cli = Cli::parse();
    let format = cli.format;
    match dispatch(cli.command, cli.seed) {
        Ok(output) => {
            output.report.emit(format);
            std::process::exit(output.exit);
        }
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(error.exit_code());
        }
    }
}
