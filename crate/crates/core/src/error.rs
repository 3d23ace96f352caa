use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("outside the domain of validity: {0}")]
    Domain(String),

    #[error("quadrature failed: estimated error {estimate:.3e} exceeds {allowed:.3e}")]
    Quadrature { estimate: f64, allowed: f64 },

    #[error("integrator step failure at t = {t:.6e} s (step {h:.3e} s): {reason}")]
    StepFailure { t: f64, h: f64, reason: String },

    #[error("phase covariance is not positive semidefinite: {0}")]
    NonPsdCovariance(String),

    #[error("encoding blocked at site {position}: {reason}")]
    EncodingBlocked { position: usize, reason: String },

    #[error("invalid port at site {index}: {reason}")]
    InvalidPort { index: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// Checks `value > 0` and finite.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {value}")))
    }
}

/// Checks `value >= 0` and finite.
pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be non-negative and finite, got {value}")))
    }
}
