use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown affine type: {0}")]
    UnknownType(String),
    #[error("vector is not in the span of the simple roots")]
    NotInRootSpan,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("lattice L is not available for type {0}")]
    UnsupportedLattice(String),
    #[error("operation not supported for type {0}")]
    UnsupportedType(String),
    #[error("partition is not a {0}-core")]
    NotACore(usize),
    #[error("charge vector entries must sum to zero")]
    BadCharge,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("image of {0} is not integral")]
    NonIntegralImage(String),
    #[error("solution set is not closed under the action: {0}")]
    NotClosed(String),
    #[error("{0} is not a sum of two squares")]
    Unsolvable(u64),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
