use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("superluminal velocity: speed {0} is not below c")]
    Superluminal(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("input is not a Lorentz transform: {0}")]
    NotLorentz(String),

    #[error(
        "loop did not close: residual boost speed {residual:e} exceeds tolerance {tolerance:e}"
    )]
    LoopNotClosed { residual: f64, tolerance: f64 },

    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of a numerical procedure rather than of its inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::LoopNotClosed { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
