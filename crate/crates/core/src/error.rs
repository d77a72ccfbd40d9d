use thiserror::Error;

use crate::splitting::EmbeddingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero ray")]
    ZeroRay,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("invalid splitting: {0}")]
    InvalidConfig(String),

    #[error("invalid embedding {0}")]
    InvalidEmbedding(EmbeddingId),

    #[error("embeddings {0} and {1} lie in different Frobenius cycles")]
    DifferentCycles(EmbeddingId, EmbeddingId),

    #[error("undefined index {name} at {at}")]
    UndefinedIndex { name: &'static str, at: EmbeddingId },

    #[error("{0} lies in the stratum")]
    InStratum(EmbeddingId),

    #[error("{0} is not in the admissible set")]
    NotAdmissible(EmbeddingId),

    #[error("invalid argument pair: {0}")]
    InvalidPair(String),

    #[error("not a refinement: {0}")]
    NotRefinement(String),

    #[error("weight is not integral")]
    NonInteger,

    #[error("invalid stratum encoding at position {position} ('{token}'): {reason}")]
    StratumEncoding {
        position: usize,
        token: String,
        reason: String,
    },

    #[error("invalid weight encoding at position {position} ('{token}'): {reason}")]
    WeightEncoding {
        position: usize,
        token: String,
        reason: String,
    },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
