use std::fmt;

use sdc_core::SdcError;

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or config file; exit code 2.
    Config(String),
    /// Newton or sweep iteration failed; exit code 1.
    Divergence(String),
    /// Output could not be written; exit code 2.
    Io(std::io::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Divergence(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "error: {msg}"),
            CliError::Divergence(msg) => write!(f, "solver failure: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<SdcError> for CliError {
    fn from(e: SdcError) -> Self {
        match e {
            SdcError::Config(msg) => CliError::Config(msg),
            other => CliError::Divergence(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}
