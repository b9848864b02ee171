use alloc::string::String;

use crate::quad::QuadResult;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The adaptive scheme ran out of evaluations. `best` is the estimate at the
    /// point it stopped, with its (too large) error estimate.
    #[error("evaluation budget exhausted after {evaluations} evaluations (best estimate {best:?})")]
    BudgetExceeded { best: QuadResult, evaluations: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("kernel rejected: {0}")]
    KernelRejected(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
