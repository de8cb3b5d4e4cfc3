use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, SdcError>;

/// Errors raised by node construction, substep solves and sweeps.
#[derive(Debug, Clone, PartialEq)]
pub enum SdcError {
    /// Invalid parameter combination (node count, family, missing split...).
    Config(String),
    /// Newton iteration did not reach tolerance. `trace` holds the step norm
    /// of every iteration that was taken.
    Divergence { iterations: usize, trace: Vec<f64> },
    /// Newton matrix (or closed-form denominator) was singular.
    Singular,
}

impl SdcError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        SdcError::Config(msg.into())
    }
}

impl fmt::Display for SdcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SdcError::Config(msg) => write!(f, "configuration error: {msg}"),
            SdcError::Divergence { iterations, trace } => {
                write!(f, "solver diverged after {iterations} iterations")?;
                if let Some(last) = trace.last() {
                    write!(f, " (last step norm {last:e})")?;
                }
                Ok(())
            }
            SdcError::Singular => write!(f, "singular Newton matrix"),
        }
    }
}

impl core::error::Error for SdcError {}
