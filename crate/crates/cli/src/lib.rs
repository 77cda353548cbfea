//! Command-line driver for `grlimit-core`: argument parsing, JSON/CSV/text
//! reports, a content-addressed result cache and the `verify-all` runner.

mod args;
pub mod cache;
pub mod checks;
mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format};
pub use output::Output;

/// Success, or every check passed.
pub const EXIT_OK: u8 = 0;
/// A check ran and failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Bad arguments, invalid shape or exceeded budget.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] grlimit_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cache entry for `{0}` differs from recomputation")]
    CacheMismatch(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CacheMismatch(_) => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

/// Parses `argv`, runs one subcommand and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::execute(&cli, err).and_then(|o| {
        o.write(cli.format, out)?;
        Ok(o.pass)
    }) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
