use thiserror::Error;

/// Errors produced by the distribution, moment, sampling and fitting routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TlssError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The Laplace density has no derivative at its location.
    #[error("density derivative is undefined at x = {0} (Laplace kink)")]
    Singularity(f64),

    #[error("moments do not exist for the {0} kernel")]
    MomentNonexistence(&'static str),

    #[error(
        "series expansion only supported for |lambda| <= {limit}, got {lambda}; use quadrature"
    )]
    SeriesRange { lambda: f64, limit: f64 },

    #[error("observation {value} at index {index} is outside the support of {model}")]
    Support {
        model: &'static str,
        index: usize,
        value: f64,
    },

    #[error("non-finite log-likelihood in finite-difference stencil along parameter {direction}")]
    Stencil { direction: usize },

    #[error("quadrature did not reach tolerance {tolerance:e} (estimate {estimate:e})")]
    Quadrature { tolerance: f64, estimate: f64 },

    #[error("data error: {0}")]
    Data(String),

    #[error("data error at line {line}: {message}")]
    DataLine { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl TlssError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        TlssError::Domain(msg.into())
    }
}

impl From<std::io::Error> for TlssError {
    fn from(err: std::io::Error) -> Self {
        TlssError::Io(err.to_string())
    }
}

pub type Result<T, E = TlssError> = std::result::Result<T, E>;
