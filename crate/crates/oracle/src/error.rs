use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("truncation did not converge: relative change {change:e} at dim {dim} exceeds tolerance")]
    TruncationNotConverged { dim: usize, change: f64 },

    #[error("moment order {n}+{m} too high for a {dim}-level ladder (limit dim/4)")]
    OrderTooHighForTruncation { n: u32, m: u32, dim: usize },

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error(transparent)]
    Model(#[from] nonclassical::Error),
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;
