use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank {0} is outside the supported range 1..=15")]
    UnsupportedRank(usize),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("polynomial is not invertible: constant term is not 1")]
    NotUnit,
    #[error("element has weight {actual}, below the required {required}")]
    WeightTooLow { required: usize, actual: usize },
    #[error("commutator is trivial in RF({0})")]
    TrivialCommutator(usize),
    #[error("commutator must have weight at least 2")]
    WeightBelowTwo,
    #[error("invalid generator pair ({i},{j}) for n = {n}")]
    BadPair { i: usize, j: usize, n: usize },
    #[error("component count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("component {k} out of range 1..={n}")]
    BadComponent { k: usize, n: usize },
    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("expected {expected} components, got {actual}")]
    WrongComponentCount { expected: usize, actual: usize },
    #[error("a pairwise linking number is nonzero, so no Delta-move sequence exists")]
    NonzeroLinking,
    #[error("invalid basis element: {0}")]
    InvalidBasisElement(String),
    #[error("position {position} is not a valid adjacent pair in a sequence of length {len}")]
    BadPosition { position: usize, len: usize },
    #[error("tuple is not the longitude tuple of a four-strand string link")]
    NotRealizable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;
