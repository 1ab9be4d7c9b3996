use thiserror::Error;

/// Errors produced by the time discretization library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DgError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("t = {t} lies outside [0, {t_end}] or on the wrong side of the boundary")]
    OutOfDomain { t: f64, t_end: f64 },

    #[error("data error: {0}")]
    Data(String),

    /// The slab linear system could not be factorized. Usually a violated
    /// discrete inf-sup condition.
    #[error("singular linear system on slab {slab}")]
    SolverFailure { slab: usize },

    #[error("study run with N = {n_slabs} failed: {source}")]
    Study {
        n_slabs: usize,
        #[source]
        source: Box<DgError>,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DgError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(DgError::InvalidArgument(msg.into()))
}
