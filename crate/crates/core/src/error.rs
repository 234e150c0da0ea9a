use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),
    #[error("invalid window for n = {n}: {reason}")]
    InvalidWindow { n: usize, reason: String },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("element is not 0-Grassmannian")]
    NotGrassmannian,
    #[error("partition {0} is not bounded by {1}")]
    NotBounded(String, usize),
    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("element does not lie in the requested subspace: {0}")]
    NotInSubspace(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A computation that is guaranteed to succeed mathematically did not.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
