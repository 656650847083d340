// SPDX-License-Identifier: Apache-2.0

//! `mlspec`: minimal-length deformed spectra of diatomic molecules.
//!
//! Exit status: 0 success, 1 computation error, 2 invalid configuration,
//! 3 data error (unreadable or malformed file, unknown molecule, missing
//! record), 4 verification failure.

mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mlspec::{EnergyOrigin, EnergyUnit, FitBasis, PotentialKind};

use crate::output::Format;

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

/// Largest n and ℓ accepted on the command line.
pub const N_MAX_CAP: u32 = 200;
pub const L_MAX_CAP: u32 = 200;

/// Directory holding molecules.csv and levels.csv.
pub const DATA_DIR_ENV: &str = "MLSPEC_DATA_DIR";

#[derive(Debug, Parser)]
#[command(name = "mlspec", version, about = "Minimal-length deformed vibration-rotation spectra of diatomic molecules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels E0, dE and E = E0 + dE for n <= nmax, l <= lmax.
    Spectrum(SpectrumArgs),
    /// The six spectroscopic constants, optionally against a Dunham fit.
    Constants(ConstantsArgs),
    /// Closed forms against the numerical oracle; exits 4 on any failure.
    Verify(VerifyArgs),
    /// Upper bound on beta from a measured level.
    FitBeta(FitBetaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Potential {
    Kratzer,
    Pho,
}

impl From<Potential> for PotentialKind {
    fn from(p: Potential) -> Self {
        match p {
            Potential::Kratzer => PotentialKind::Kratzer,
            Potential::Pho => PotentialKind::Pho,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    #[value(name = "cm-1")]
    Wavenumber,
    #[value(name = "eV")]
    ElectronVolt,
    #[value(name = "internal")]
    Internal,
}

impl From<Units> for EnergyUnit {
    fn from(u: Units) -> Self {
        match u {
            Units::Wavenumber => EnergyUnit::Wavenumber,
            Units::ElectronVolt => EnergyUnit::ElectronVolt,
            Units::Internal => EnergyUnit::Internal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Standard,
    Extended,
}

impl From<Basis> for FitBasis {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Standard => FitBasis::Standard,
            Basis::Extended => FitBasis::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Origin {
    Dissociation,
    Minimum,
}

impl From<Origin> for EnergyOrigin {
    fn from(o: Origin) -> Self {
        match o {
            Origin::Dissociation => EnergyOrigin::Dissociation,
            Origin::Minimum => EnergyOrigin::Minimum,
        }
    }
}

/// Molecule selection, deformation and output options shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// `synthetic` (De = re = mu = 1), `synthetic:GAMMA`, or a name from the molecules file.
    #[arg(long, default_value = "synthetic")]
    pub molecule: String,

    /// Molecules file (default: $MLSPEC_DATA_DIR/molecules.csv, else the bundled table).
    #[arg(long, value_name = "PATH")]
    pub molecules_file: Option<PathBuf>,

    /// Deformation parameter beta in internal units (angstrom^2, hbar = 1).
    #[arg(long, group = "deformation", allow_hyphen_values = true)]
    pub beta: Option<f64>,

    /// Minimal length (Delta X)min in angstrom; beta = x^2 / 5.
    #[arg(long, group = "deformation", allow_hyphen_values = true)]
    pub min_length_angstrom: Option<f64>,

    #[arg(long, value_enum, default_value = "cm-1")]
    pub units: Units,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    /// Default directory for data files.
    #[arg(long, env = DATA_DIR_ENV, value_name = "DIR", hide_env_values = true)]
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value = "kratzer")]
    pub potential: Potential,
    #[arg(long, default_value_t = 3)]
    pub nmax: u32,
    #[arg(long, default_value_t = 2)]
    pub lmax: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, value_enum, default_value = "kratzer")]
    pub potential: Potential,
    /// Also fit a generated level table and report relative differences.
    #[arg(long)]
    pub fit: bool,
    /// Largest n in the fitted level table.
    #[arg(long, default_value_t = 5)]
    pub nmax: u32,
    /// Largest l in the fitted level table.
    #[arg(long, default_value_t = 5)]
    pub lmax: u32,
    #[arg(long, value_enum, default_value = "extended")]
    pub basis: Basis,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to one potential (default: both).
    #[arg(long, value_enum)]
    pub potential: Option<Potential>,
    #[arg(long, default_value_t = 3)]
    pub nmax: u32,
    #[arg(long, default_value_t = 2)]
    pub lmax: u32,
    /// Synthetic gamma values swept when --molecule is not given.
    #[arg(long, value_delimiter = ',', default_values_t = [20.0, 100.0])]
    pub gamma: Vec<f64>,
    /// Fixed coarsest grid size; replaces adaptive refinement by one Richardson step.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Fixed outer box edge in angstrom.
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Molecule to verify (default: the synthetic gamma sweep).
    #[arg(long)]
    pub molecule: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub molecules_file: Option<PathBuf>,
    /// Deformation parameter beta in internal units (default 1e-6).
    #[arg(long, group = "deformation", allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, group = "deformation", allow_hyphen_values = true)]
    pub min_length_angstrom: Option<f64>,
    #[arg(long, value_enum, default_value = "cm-1")]
    pub units: Units,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, env = DATA_DIR_ENV, value_name = "DIR", hide_env_values = true)]
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitBetaArgs {
    #[arg(long, value_enum, default_value = "kratzer")]
    pub potential: Potential,
    /// Vibrational quantum number of the measured level.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Rotational quantum number of the measured level.
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Experimental levels file (default: $MLSPEC_DATA_DIR/levels.csv, else the bundled table).
    #[arg(long, value_name = "PATH", conflicts_with = "energy")]
    pub levels_file: Option<PathBuf>,
    /// Measured energy given directly, in --units, instead of a levels file.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Origin of --energy.
    #[arg(long, value_enum, default_value = "dissociation", requires = "energy")]
    pub origin: Origin,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a, &mut out),
        Command::Constants(a) => commands::constants(&a, &mut out),
        Command::Verify(a) => commands::verify(&a, &mut out),
        Command::FitBeta(a) => commands::fit_beta(&a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mlspec: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
