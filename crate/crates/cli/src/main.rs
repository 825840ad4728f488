//! `coherent`: evaluate, evolve and verify harmonic-oscillator coherent states.
//!
//! Exit status: 0 on success (and, for `verify`, when every selected check
//! passes), 1 when a verification check fails, 2 for usage or configuration
//! errors.

use std::process::ExitCode;

use clap::Parser;

mod commands;
mod config;
mod output;

use config::{Cli, CliError, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Wavefn(args) => commands::wavefn(&args),
        Command::Evolve(args) => commands::evolve(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Usage(_) | CliError::Config(_) = e {
                eprintln!("run with --help for usage");
            }
            ExitCode::from(2)
        }
    }
}
