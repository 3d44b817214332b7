//! Command-line driver for `lambda-dicke`: TOML configuration, sweep
//! orchestration and deterministic CSV/JSON emission.

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

pub use commands::{execute, Command};
pub use config::RunConfig;
pub use error::{CliError, ConfigError};

use config::{AxisSpec, Format};

#[derive(Debug, Parser)]
#[command(name = "lambda-dicke", version, about = "Finite-temperature Lambda Dicke model phase diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML run configuration; defaults apply to anything missing.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// g1 axis as min:max:points, or a single value.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g1: Option<AxisSpec>,

    /// g2 axis as min:max:points, or a single value.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g2: Option<AxisSpec>,

    /// Comma-separated temperatures in units of the gap.
    #[arg(long = "T", global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub temperatures: Option<Vec<f64>>,
}

impl Cli {
    /// The config file (or defaults) with command-line overrides applied.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.meta = None;
        if let Some(dir) = &self.out {
            cfg.output.dir = dir.clone();
        }
        if let Some(n) = self.workers {
            cfg.run.workers = n;
        }
        if let Some(f) = self.format {
            cfg.output.format = f;
        }
        if let Some(a) = self.g1 {
            cfg.axes.g1 = Some(a);
        }
        if let Some(a) = self.g2 {
            cfg.axes.g2 = Some(a);
        }
        if let Some(t) = &self.temperatures {
            cfg.temperature.kt_over_gap = Some(t.clone());
            cfg.temperature.kt = None;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code: 0 on success, 1 for usage or configuration errors, 2
/// for numerical failures.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = cli
        .resolve()
        .map_err(CliError::from)
        .and_then(|cfg| execute(cli.command, &cfg));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            e.exit_code()
        }
    }
}
