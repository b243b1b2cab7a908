//! Command-line driver behind the `nongauss` binary.
//!
//! Every subcommand reads an optional JSON configuration, writes one data file
//! (`csv` or `json`) and a `.meta.json` sidecar echoing the configuration, and
//! exits with 0 on success, 2 on configuration errors, 3 on numerical
//! non-convergence and 4 when a Fock truncation is too small.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::Map;

use crate::acceptance;
use crate::error::{Error, Result};
pub use config::SCHEMA_VERSION;
pub use output::{format_float, write_artifact, Artifact, Cell, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNCONVERGED: i32 = 3;
pub const EXIT_TRUNCATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nongauss", version, about = "Kerr non-Gaussianity as a witness of quantum gravity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON configuration; built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quadrature cumulants under Kerr and phase-channel evolution.
    Evolve(Common),
    /// SNR over experimental parameters.
    Design(Common),
    /// Wigner function on a grid.
    Wigner(Common),
    /// Master-equation evolution and its Gaussian-mixture form.
    Master(Common),
    /// SNR of the fourth k-statistic against the quadrature angle.
    Snr(Common),
    /// Runs the acceptance criteria A1-A11.
    Acceptance(Common),
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidParameter(_) => EXIT_CONFIG,
        Error::Unconverged(_) | Error::QuadratureUnconverged { .. } => EXIT_UNCONVERGED,
        Error::TruncationTooSmall { .. }
        | Error::IndexOverflow { .. }
        | Error::DimensionLimit { .. }
        | Error::GridUnderflow { .. } => EXIT_TRUNCATION,
        _ => EXIT_FAILURE,
    }
}

fn load<T: DeserializeOwned + Default>(path: Option<&Path>, version_of: impl Fn(&T) -> u32) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            config::parse(&text, version_of)
        }
    }
}

/// Runs a parsed command line, returning the files written and whether every
/// acceptance criterion passed (always `true` for other commands).
pub fn execute(cli: &Cli) -> Result<(Vec<PathBuf>, bool)> {
    let (common, artifact, ok) = match &cli.command {
        Command::Evolve(c) => {
            let cfg: config::EvolveConfig = load(c.config.as_deref(), |x: &config::EvolveConfig| x.schema_version)?;
            (c, commands::evolve(&cfg)?, true)
        }
        Command::Design(c) => {
            let cfg: config::DesignConfig = load(c.config.as_deref(), |x: &config::DesignConfig| x.schema_version)?;
            (c, commands::design(&cfg)?, true)
        }
        Command::Wigner(c) => {
            let cfg: config::WignerConfig = load(c.config.as_deref(), |x: &config::WignerConfig| x.schema_version)?;
            (c, commands::wigner_cmd(&cfg)?, true)
        }
        Command::Master(c) => {
            let cfg: config::MasterConfig = load(c.config.as_deref(), |x: &config::MasterConfig| x.schema_version)?;
            (c, commands::master(&cfg)?, true)
        }
        Command::Snr(c) => {
            let cfg: config::SnrConfig = load(c.config.as_deref(), |x: &config::SnrConfig| x.schema_version)?;
            (c, commands::snr(&cfg, c.seed)?, true)
        }
        Command::Acceptance(c) => {
            if c.config.is_some() {
                return Err(Error::Config("acceptance takes no configuration".into()));
            }
            let outcomes = acceptance::run_all(c.seed);
            for o in &outcomes {
                println!("{}", o.line());
            }
            let ok = outcomes.iter().all(|o| o.passed);
            let artifact = Artifact {
                command: "acceptance",
                table: commands::acceptance_table(&outcomes),
                config: serde_json::json!({ "schema_version": SCHEMA_VERSION }),
                metadata: Map::new(),
            };
            (c, artifact, ok)
        }
    };
    let files = write_artifact(&common.out, &artifact, common.format, common.seed)?;
    Ok((files, ok))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((files, ok)) => {
            for f in files {
                eprintln!("wrote {}", f.display());
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
