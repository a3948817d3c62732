use alloc::string::String;

use crate::weyl::Family;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported rank {rank} for family {family:?}")]
    UnsupportedRank { family: Family, rank: usize },
    #[error("quadric dimension {n} is outside the supported range {min}..={max}")]
    DimensionOutOfRange { n: u32, min: u32, max: u32 },
    #[error("group mismatch")]
    GroupMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("inexact division by the simple root with index {index}")]
    InexactDivision { index: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("quadric context mismatch")]
    ContextMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("flag variety mismatch: {0}")]
    FlagMismatch(String),
    #[error("non-integral coefficient: {0}")]
    Integrality(String),
    #[error("invalid factor pattern: {0}")]
    InvalidPattern(String),
    #[error("polynomial is not invariant under the parabolic subgroup of {0}")]
    NotInvariant(String),
    #[error("two constructions disagree: {0}")]
    Inconsistent(String),
    #[error("cycle is not homogeneous")]
    Inhomogeneous,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
