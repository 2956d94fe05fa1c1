//! Command-line front end: configuration ingestion, spectrum / truth-table /
//! fit / lifetime / rabi subcommands, CSV output.
//!
//! Exit codes: 0 on success, 2 on user or config errors, 3 on numerical
//! failures. Identical invocations produce byte-identical CSVs.

// Validation guards of the form `!(x > 0)` are NaN-rejecting on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod data;
pub mod error;
pub mod grid;
pub mod output;

pub use commands::{PolArg, StateArg};
pub use config::Config;
pub use error::{CliError, ErrorKind, Result};

#[derive(Debug, Parser)]
#[command(
    name = "dotgate",
    version,
    about = "Quantum-dot cavity cNOT gate model: conditional reflection spectra, gate probability tables, and spectrum fitting"
)]
pub struct Cli {
    /// JSON configuration file; the built-in device is used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan the probe across a frequency or wavelength grid for one channel.
    Spectrum {
        /// Control state of the dot during the scan.
        #[arg(long, value_enum, ignore_case = true)]
        state: StateArg,
        /// Input polarization.
        #[arg(long = "in", value_enum, ignore_case = true)]
        input: PolArg,
        /// Detected polarization.
        #[arg(long = "out", value_enum, ignore_case = true)]
        output: PolArg,
        /// start:stop:step, optionally suffixed with `nm` or `ghz` (GHz default).
        #[arg(long)]
        grid: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Compute the 2×4 conditional probability table at the operating point.
    TruthTable {
        /// Ideal-gate limit: huge cooperativity, perfect preparation,
        /// monochromatic probe, no background.
        #[arg(long)]
        ideal: bool,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Least-squares fit of model parameters to one or more spectra.
    Fit {
        /// Dataset: `path.csv,state=g|minus|mixture,in=H|V,out=H|V[,fwhm=GHZ][,scale=X]`.
        /// Repeat for joint fits.
        #[arg(long = "data", value_name = "SPEC")]
        data: Vec<String>,
        /// Comma-separated free parameters:
        /// g, kappa, gamma_inhom, nu_qd, nu_cavity, alpha, w0, a0, a1, a2.
        #[arg(long)]
        free: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Shelved-state lifetime versus dot–cavity detuning.
    Lifetime {
        /// Detuning range start:stop:step in GHz.
        #[arg(long = "delta-range")]
        delta_range: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Excitation probability versus average pump power.
    Rabi {
        /// Power range start:stop:step in µW.
        #[arg(long = "power-range")]
        power_range: String,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

pub fn run(cli: Cli) -> Result<()> {
    let config = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Spectrum {
            state,
            input,
            output,
            grid,
            csv,
        } => commands::cmd_spectrum(&config, state, input, output, &grid, csv.as_deref()),
        Command::TruthTable { ideal, csv } => {
            commands::cmd_truth_table(&config, ideal, csv.as_deref())
        }
        Command::Fit { data, free, csv } => {
            commands::cmd_fit(&config, &data, &free, csv.as_deref())
        }
        Command::Lifetime { delta_range, csv } => {
            commands::cmd_lifetime(&config, &delta_range, csv.as_deref())
        }
        Command::Rabi { power_range, csv } => {
            commands::cmd_rabi(&config, &power_range, csv.as_deref())
        }
    }
}
