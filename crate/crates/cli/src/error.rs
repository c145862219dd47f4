use dirichlet_core::dirichlet::ConstructError;
use dirichlet_core::embedding::EmbeddingError;
use dirichlet_core::fiber::FiberError;
use dirichlet_core::group::GroupError;
use dirichlet_core::wreath::WreathError;
use thiserror::Error;

/// Every failure the binary reports, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("a and b are not coprime")]
    NotCoprime,
    #[error("{0}")]
    DegreeTooSmall(String),
    #[error("{0}")]
    FieldTooSmall(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("rejected: {0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Invalid(_) | CliError::Io { .. } => 1,
            CliError::NotCoprime => 2,
            CliError::DegreeTooSmall(_) => 3,
            CliError::FieldTooSmall(_) => 4,
            CliError::Budget(_) => 5,
            CliError::Rejected(_) => 6,
        }
    }

    pub fn io(path: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::NotCoprime => CliError::NotCoprime,
            e @ (ConstructError::DegreeTooSmall { .. } | ConstructError::NoValidCycleLength { .. }) => {
                CliError::DegreeTooSmall(e.to_string())
            }
            e @ ConstructError::FieldTooSmall(_) => CliError::FieldTooSmall(e.to_string()),
            e @ ConstructError::PreconditionViolation(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderTooLarge { .. } => CliError::Budget(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<WreathError> for CliError {
    fn from(e: WreathError) -> Self {
        match e {
            WreathError::Group(g) => g.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Group(g) | EmbeddingError::Fiber(FiberError::Group(g)) => g.into(),
            e @ EmbeddingError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}
