use serde::Serialize;

use crate::linalg::Vector;

/// Points `x`, `y` of a set and a point `m` strictly between them that is not in the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotConvexWitness {
    pub x: Vector,
    pub y: Vector,
    pub m: Vector,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires a nonempty set")]
    Empty,
    #[error("set is not convex: {0:?}")]
    NotConvex(Box<NotConvexWitness>),
    #[error("arrangement needs {needed} hyperplanes, cap is {cap}")]
    ResourceCap { needed: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
