//! Sweeps, critical temperatures and oracle verification for the
//! `nonclassical` model, behind the `nonclassical` binary.

pub mod commands;
pub mod config;
pub mod format;

pub use commands::{critical, evolve, thermal, verify, CriticalReport, VerifyCheck, VerifyReport};
pub use config::{OracleOverrides, Overrides, RunConfig, Sweep, SweepKind};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
    #[error(transparent)]
    Model(#[from] nonclassical::Error),
    #[error(transparent)]
    Oracle(#[from] nonclassical_oracle::OracleError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error is an input or convergence failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
