use thiserror::Error;

/// Errors produced by the toolkit.
///
/// `InternalAssertion` is reserved for conditions that are mathematically
/// impossible for valid inputs (e.g. `det K ≤ 1/2` in a CP non-gIB channel);
/// everything else reports a problem with the caller's inputs.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} modes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} is not symmetric (max asymmetry {max_asymmetry:.3e})")]
    NotSymmetric { what: &'static str, max_asymmetry: f64 },

    #[error("{what} is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPositiveSemidefinite { what: &'static str, min_eig: f64 },

    #[error("{what} is not positive definite")]
    NotPositiveDefinite { what: &'static str },

    #[error("matrix K is singular")]
    SingularK,

    #[error("channel is gIB (slack {slack_gib:.3e}) — no recalibration plan exists")]
    GibChannel { slack_gib: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal consistency assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for range/validation failures.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
