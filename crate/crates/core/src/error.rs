use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StellarError {
    #[error("the zero vector has no constellation")]
    ZeroState,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("frame is rank deficient (rank {rank} < k = {k})")]
    RankDeficient { rank: usize, k: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("chart singularity: leading minor vanishes at the sampling node")]
    ChartSingularity,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, StellarError>;
