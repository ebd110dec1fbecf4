use thiserror::Error;

use crate::operator::Shape;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operand shapes differ: {0} vs {1}")]
    ShapeMismatch(Shape, Shape),
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series constant term must vanish")]
    NonZeroConstant,
    #[error("series constant term must be the identity")]
    NonIdentityConstant,
    #[error("operator is not invertible")]
    NotInvertible,
    #[error("operator at site {site} is not invertible")]
    SingularSite { site: usize },
    #[error("tensor slot {0} used twice")]
    SlotCollision(usize),
    #[error("tensor slot {slot} out of range for {total} factors")]
    SlotOutOfRange { slot: usize, total: usize },
    #[error("site {site} out of range 1..={sites}")]
    SiteOutOfRange { site: usize, sites: usize },
    #[error("operand kind does not match the operator kind")]
    KindMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension {dim} exceeds the budget of {limit}")]
    DimensionBudget { dim: usize, limit: usize },
    #[error("need at least {needed} sample values per variable, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("order {needed} requested but only {available} available")]
    MissingOrder { needed: usize, available: usize },
    #[error("spectral parameter evaluation hits a pole")]
    SingularPoint,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
