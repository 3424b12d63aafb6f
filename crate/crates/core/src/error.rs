use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension {0} is not an even square phase-space dimension")]
    InvalidDimension(usize),

    #[error("parameter `{name}` = {value} out of range: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// Ordering `q1 > q2` violated; the physical chart is singular there.
    #[error("collision or ordering violation: q1 = {q1}, q2 = {q2}")]
    Collision { q1: f64, q2: f64 },

    #[error("map undefined while probing coordinate {coordinate}: {source}")]
    Evaluation {
        coordinate: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("implicit step failed at tau = {tau} after {iterations} iterations (residual {residual:e})")]
    StepFailure {
        tau: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("non-finite state encountered at tau = {tau}")]
    NonFinite { tau: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error estimate {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("root finding failed: {0}")]
    Root(String),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Parameter {
            name,
            value,
            reason,
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
