use std::process::ExitCode;

use clap::Parser;

use sdc_cli::cli::Cli;

fn main() -> ExitCode {
    match sdc_cli::run_cli(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
