use thiserror::Error;

use crate::actions::ActionViolation;
use crate::amalgam::CompatibilityViolation;
use crate::table::AxiomViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("entry ({row},{col}) = {value} is outside 1..{n}")]
    EntryOutOfRange { row: usize, col: usize, value: i64, n: usize },

    #[error(transparent)]
    Axiom(#[from] AxiomViolation),

    #[error("element {index} is outside 1..{n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("not a group table: {0}")]
    NotAGroup(String),

    #[error("t = {t} is not a unit modulo {n}")]
    NotCoprime { n: usize, t: i64 },

    #[error("order must be at least 1")]
    EmptyOrder,

    #[error("subset {0:?} is not closed under the operation")]
    NotClosed(Vec<usize>),

    #[error("{what}: {actual} exceeds the limit of {limit}")]
    BoundExceeded { what: &'static str, limit: u64, actual: u64 },

    #[error(transparent)]
    Action(#[from] ActionViolation),

    #[error(transparent)]
    Compatibility(#[from] CompatibilityViolation),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("block mismatch: {0}")]
    BlockMismatch(String),
}

pub type Result<T, E = QuandleError> = std::result::Result<T, E>;

pub(crate) fn check_bound(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(QuandleError::BoundExceeded { what, limit: limit as u64, actual: actual as u64 })
    } else {
        Ok(())
    }
}
