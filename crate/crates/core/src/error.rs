use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not sign-skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("composite mutation refused: block entry ({0}, {1}) is nonzero")]
    NonCommutingBlock(usize, usize),
    #[error("entry must be strictly positive: {0}")]
    NonPositive(String),
    #[error("entry does not lift to 0, ±1, ±θ₁: {0}")]
    NotLiftable(String),
    #[error("determinant is not a unit: {0}")]
    NotUnit(String),
    #[error("semiring element has a negative coefficient")]
    NotInSemiring,
    #[error("quiver is not of Dynkin type ADE: {0}")]
    NotDynkin(String),
    #[error("complement failure: {0}")]
    Complement(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
