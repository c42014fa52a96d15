//! Library side of the `qlandau` binary, split out so tests can drive it in-process.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use std::ffi::OsString;

use clap::Parser;

use crate::commands::Failure;
use crate::config::{Cli, ConfigError, RunConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;

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
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let cfg = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(ConfigError::Usage(m)) => {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
        Err(ConfigError::Io(m)) => {
            eprintln!("error: {m}");
            return EXIT_IO;
        }
    };
    match commands::execute(&cfg) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(f) => {
            eprintln!("error: {f}");
            match f {
                Failure::Usage(_) => EXIT_USAGE,
                Failure::Io(_) => EXIT_IO,
                Failure::NonConvergence(_) => EXIT_NON_CONVERGENCE,
            }
        }
    }
}
