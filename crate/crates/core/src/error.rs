use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: char, rank: usize },
    #[error("simple roots do not have the Cartan matrix of {0}")]
    WrongCartanMatrix(String),
    #[error("root set is not a closed subsystem: {0}")]
    NotClosed(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("embedding is not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("matrix is not an involutive automorphism: {0}")]
    NotInvolution(String),
    #[error("operation `{0}` needs the full subalgebra h, but this pair only records t∩h")]
    TorusOnly(&'static str),
    #[error("vector is not in the span of the roots")]
    NotInTorus,
    #[error("vector lies in h (its m-component is zero)")]
    VectorInH,
    #[error("vector is not in m")]
    NotInM,
    #[error("metric operator is invalid: {0}")]
    BadMetric(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("center dimension bound {cmin} exceeds rank {rank}")]
    CenterBound { cmin: usize, rank: usize },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
