//! Command-line front end for `wigner-core`.
//!
//! Every subcommand writes its data to `--out` or standard output and, when
//! writing to a file, a `<out>.manifest.json` sidecar recording the resolved
//! parameters. Exit codes: 0 success, 2 usage or domain error, 3 numerical
//! failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
mod commands;
pub mod config;
pub mod format;
pub mod manifest;

use std::io::{self, Write};
use std::path::{Path, PathBuf};

pub use args::{Cli, Command, Format};
pub use commands::{evaluate_sweep, sweep_config, SWEEP_HEADER};
pub use config::SweepConfig;
pub use manifest::RunManifest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] wigner_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }

    fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(source: io::Error) -> Self {
        CliError::io("<stdout>", source)
    }
}

/// Runs one parsed invocation. Data goes to `stdout` unless `--out` is set;
/// diagnostics that are not data go to `stderr`.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::WignerAngle(a) => commands::wigner_angle(&a, stdout),
        Command::Orbit(a) => commands::orbit(&a, stdout, stderr),
        Command::Experiment(a) => commands::experiment(&a, stdout),
        Command::Sweep(a) => commands::sweep(&a, stdout),
    }
}

/// Path of the manifest written next to a data file.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
