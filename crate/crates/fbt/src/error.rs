use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] fbt_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} acceptance criteria failed")]
    CriteriaFailed(usize),
}

impl CliError {
    /// 2 for bad input, 1 for failures while computing.
    pub fn exit_code(&self) -> i32 {
        use fbt_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Core(E::UnknownName(_) | E::InvalidParameter(_) | E::KernelRejected(_) | E::HypothesisViolated(_)) => 2,
            CliError::Core(E::BudgetExceeded { .. }) | CliError::Io(_) | CliError::CriteriaFailed(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        use fbt_core::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "config",
            CliError::Core(E::UnknownName(_)) => "unknown_name",
            CliError::Core(E::InvalidParameter(_)) => "invalid_parameter",
            CliError::Core(E::KernelRejected(_)) => "kernel_rejected",
            CliError::Core(E::HypothesisViolated(_)) => "hypothesis_violated",
            CliError::Core(E::BudgetExceeded { .. }) => "budget_exceeded",
            CliError::Io(_) => "io",
            CliError::CriteriaFailed(_) => "criteria_failed",
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() }).to_string()
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
