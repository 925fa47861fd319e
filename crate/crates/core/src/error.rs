use thiserror::Error;

/// Errors raised by the closed-form computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("omega must be positive and finite, got {omega}")]
    NonPositiveFrequency { omega: f64 },

    #[error("|omega1| = {omega1_abs} must be strictly below omega/2 = {half_omega}")]
    DegenerateSpectrum { omega1_abs: f64, half_omega: f64 },

    #[error("parameter `{name}` is not finite")]
    NonFiniteParameter { name: &'static str },

    #[error("temperature must be positive and finite, got {theta}")]
    NonPositiveTemperature { theta: f64 },

    #[error("moment <a^{n} a†^{m}> is not present in the moment set")]
    MissingMoments { n: u32, m: u32 },

    #[error("commutator expectation for order {k} vanishes ({value:e}); squeezing threshold is degenerate")]
    ZeroCommutatorExpectation { k: u32, value: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
