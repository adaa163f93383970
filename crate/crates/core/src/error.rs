use thiserror::Error;

/// Errors raised by the channel, capacity and dynamics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {deviation:.3e})")]
    NonHermitianInput { deviation: f64 },

    #[error("value {value} is outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },

    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    DimensionError { expected: usize, found: usize },

    #[error("eigenvalue {0:.3e} is below the positivity floor")]
    NegativeEigenvalue(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("channel is not degradable (|h_keep|^2 = {keep_sq:.6}, |h_env|^2 = {env_sq:.6})")]
    NotDegradable { keep_sq: f64, env_sq: f64 },

    #[error(
        "integrator could not reach local error {target:.1e} after {steps} steps (last difference {last_diff:.3e})"
    )]
    StepFailure { target: f64, steps: usize, last_diff: f64 },

    #[error("closed-form decay solution is singular at critical damping (X^2 + Y^2 = 0)")]
    CriticalDamping,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite, got {value}"),
        })
    }
}
