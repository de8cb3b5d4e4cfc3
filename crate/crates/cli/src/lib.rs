//! Command-line front end for `sdc-core`.
//!
//! Every invocation is turned into a [`RunConfig`], executed, and rendered as
//! CSV or as a JSON document that embeds the config for later reruns.

pub mod cli;
pub mod commands;
pub mod config;
mod error;

pub use commands::execute;
pub use config::{RunConfig, SCHEMA_VERSION};
pub use error::CliError;

/// Builds the config, runs it and writes the output.
pub fn run_cli(cli: cli::Cli) -> Result<(), CliError> {
    let config = cli.into_config()?;
    let bytes = execute(&config)?;
    match &config.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(())
}
