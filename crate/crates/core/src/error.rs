use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("0 is not a semisimple eigenvalue (kernel and image intersect)")]
    NotSemisimpleAtZero,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid rank {rank} for a {size}x{size} matrix: need 1 <= rank < size")]
    InvalidRank { rank: usize, size: usize },
    #[error(
        "target rank {target} exceeds base rank {base}: products of conjugates cannot raise rank"
    )]
    RankTooHigh { base: usize, target: usize },
    #[error("base matrix is invertible; only singular bases are supported")]
    NotSingular,
    #[error("polynomial of degree 0 has no companion matrix")]
    ZeroDegree,
    #[error("operation requires a finite field")]
    FieldNotFinite,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("invalid modulus {0}: must be a prime")]
    InvalidModulus(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
