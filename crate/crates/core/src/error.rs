use thiserror::Error;

use crate::rootsystem::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system {letter}{rank}: {reason}")]
    InvalidType {
        letter: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("weight {weight} has {found} coordinates, expected {expected}")]
    RankMismatch {
        weight: Weight,
        found: usize,
        expected: usize,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {weight} is not {p}-restricted")]
    NotRestricted { weight: Weight, p: u64 },

    #[error("characteristic {0} is not a prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rank {rank} exceeds the limit {limit} for this computation")]
    RankGuard { rank: usize, limit: usize },

    #[error("exponent N = {requested} is below the stability bound {minimum}")]
    BoundTooSmall { requested: u32, minimum: u32 },

    #[error("not a nonnegative baby-Verma combination: {0}")]
    NotBabyVermaCombination(String),

    #[error("character is not Weyl-invariant (weight {0})")]
    NotWeylInvariant(Weight),

    #[error("tilting dataset has no entry for highest weight {0}")]
    MissingTilting(Weight),

    #[error("decomposition table has no entry for restricted weight {0}")]
    IncompleteTable(Weight),

    #[error("invalid tilting entry T({weight}): {reason}")]
    InvalidTilting { weight: Weight, reason: String },

    #[error("dataset metadata mismatch: {0}")]
    MetadataMismatch(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
