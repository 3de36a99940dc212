use stellar::StellarError;
use thiserror::Error;

#[derive(Clone, Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("rank deficient: rank {rank} < k = {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl CliError {
    /// Stable machine-readable code, one per failure class.
    pub fn code(&self) -> &'static str {
        match self {
            Self::Io { .. } => "io",
            Self::Parse(_) => "parse",
            Self::Shape(_) => "shape",
            Self::Input(_) => "invalid_input",
            Self::RankDeficient { .. } => "rank_deficient",
            Self::Numeric(_) => "numeric",
            Self::CheckFailed(_) => "check_failed",
            Self::NotApplicable(_) => "not_applicable",
        }
    }

    /// 2 for unusable input, 3 for numerical trouble, 4 for a not-applicable flag.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Parse(_) | Self::Shape(_) | Self::Input(_) => 2,
            Self::RankDeficient { .. } | Self::Numeric(_) | Self::CheckFailed(_) => 3,
            Self::NotApplicable(_) => 4,
        }
    }
}

impl From<StellarError> for CliError {
    fn from(e: StellarError) -> Self {
        match e {
            StellarError::Shape(m) => Self::Shape(m),
            StellarError::InvalidInput(m) => Self::Input(m),
            StellarError::RankDeficient { rank, k } => Self::RankDeficient { rank, k },
            StellarError::ZeroState => Self::Input(e.to_string()),
            other => Self::Numeric(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Parse(e.to_string())
    }
}
