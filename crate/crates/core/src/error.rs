//! Crate-wide error type.
//!
//! The CLI maps these onto process exit codes: config errors exit 2, gate
//! violations exit 3, numerical non-convergence exits 4.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for N = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("gate violation: {what} requires {limit}, requested {requested}")]
    GateViolation {
        what: &'static str,
        limit: String,
        requested: String,
    },

    /// Iteration budget exhausted; carries the best estimate so far.
    #[error("{what} did not converge after {iterations} iterations (best estimate {best}, residual {residual})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        best: f64,
        residual: f64,
    },

    #[error("invalid custom disorder table: mean {mean}, variance {variance} (need 0 and 1 within 1e-12)")]
    InvalidDisorderTable { mean: f64, variance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("matrix file error: {0}")]
    MatrixFormat(String),

    #[error("report error: {0}")]
    Report(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Exit code for the CLI: 2 config, 3 gate, 4 non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidParameter(_) | Error::InvalidDisorderTable { .. } => 2,
            Error::GateViolation { .. } => 3,
            Error::NonConvergence { .. } => 4,
            _ => 1,
        }
    }
}
