//! `qmeas` — sweeps, figure datasets and verification for a continuously
//! measured two-level system.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 verification failure,
//! 3 I/O error.

mod args;
mod commands;
mod config;
mod output;
mod sweep;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

/// Failure modes mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Io(m) => m,
        }
    }
}

impl From<qmeas_core::Error> for CliError {
    fn from(e: qmeas_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = config::resolve(&cli)?;
    match cli.command {
        Command::PassageTime(_) => commands::passage_time::run(&opts),
        Command::Probabilities(_) => commands::probabilities::run(&opts),
        Command::Correlations(_) => commands::correlations::run(&opts),
        Command::EpLocate(_) => commands::ep_locate::run(&opts),
        Command::Verify(_) => commands::verify::run(&opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
