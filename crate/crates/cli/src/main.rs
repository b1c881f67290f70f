use std::process::ExitCode;

use clap::Parser;
use tas_secrecy::cli::Cli;
use tas_secrecy::commands;
use tas_secrecy_core::Error;

/// Invalid inputs exit with 2 (as clap does for usage errors), anything else with 1.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Domain { .. } | Error::Contract(_) | Error::LengthMismatch { .. } | Error::ZeroMean) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
