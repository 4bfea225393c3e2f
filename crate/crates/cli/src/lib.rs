//! Command-line front end for quantum graph symmetry reduction.
//!
//! Problems are JSON files describing edges, vertex couplings, a symmetry group and
//! its irreps, and a wavenumber window; see [`problem::ProblemFile`].

pub mod commands;
pub mod document;
pub mod error;
pub mod examples;
pub mod problem;
pub mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;
pub use problem::{Problem, ProblemFile};

use commands::SpectrumMode;

#[derive(Debug, Parser)]
#[command(name = "qg", version, about = "Symmetry reduction of quantum graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the coupling is self-adjoint and the group is a symmetry.
    Validate { file: PathBuf },
    /// Build the quotient graph of every irrep.
    Quotient {
        file: PathBuf,
        /// Write the quotient blocks as a JSON result document.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Eigenvalues k in the scan window.
    Spectrum(SpectrumArgs),
    /// Compare the full spectrum with the direct sum of quotient spectra.
    Verify {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print or write a bundled example: standard, delta or preferred.
    Examples {
        name: String,
        /// Directory to write `<name>.json` into.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub file: PathBuf,
    /// Spectrum of each quotient graph and their direct sum.
    #[arg(long, conflicts_with = "full")]
    pub quotients: bool,
    /// Spectrum of the full graph (default).
    #[arg(long)]
    pub full: bool,
    /// Write determinant scan samples; with --quotients one file per irrep.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Worker threads for scanning: all cores, capped by `QG_THREADS` when set.
pub fn scan_threads(env_value: Option<&str>) -> Result<usize, CliError> {
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    match env_value {
        None => Ok(cores),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n.min(cores)),
            _ => Err(CliError::Threads(v.to_string())),
        },
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let threads = || scan_threads(std::env::var("QG_THREADS").ok().as_deref());
    match &cli.command {
        Command::Validate { file } => commands::validate(&Problem::load(file)?, out),
        Command::Quotient { file, output } => commands::quotient(&Problem::load(file)?, output.as_deref(), out),
        Command::Spectrum(args) => {
            let mode = if args.quotients {
                SpectrumMode::Quotients
            } else {
                SpectrumMode::Full
            };
            let problem = Problem::load(&args.file)?;
            commands::spectrum(
                &problem,
                mode,
                args.csv.as_deref(),
                args.output.as_deref(),
                threads()?,
                out,
            )
        }
        Command::Verify { file, output } => commands::verify(&Problem::load(file)?, output.as_deref(), threads()?, out),
        Command::Examples { name, write } => commands::examples(name, write.as_deref(), out),
    }
}
