use thiserror::Error;

/// Errors raised by constructors and evaluations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("body is not {k}-rotationally symmetric")]
    NotSymmetric { k: usize },
    #[error("curves {0} and {1} cross")]
    CrossingCurves(usize, usize),
    #[error("curves {0} and {1} share a boundary endpoint")]
    EndpointCollision(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("no valid perturbation found after {0} attempts")]
    PerturbationExhausted(usize),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True when the error stems from bad input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::PerturbationExhausted(_) | Error::Computation(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
