use thiserror::Error;

/// Errors shared across the library.
///
/// The enum is deliberately flat: the CLI maps variants onto its stable exit
/// codes (malformed input, not-an-interval, resource budget), and keeping the
/// classification here means every front end agrees on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("invalid poset input: {0}")]
    InvalidPoset(String),

    #[error("cycle detected in poset relations")]
    CycleDetected,

    #[error("inflation arity mismatch: skeleton size {skeleton} but {parts} parts")]
    ArityMismatch { skeleton: usize, parts: usize },

    #[error("input size {n} exceeds the brute-force cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("DP state budget exceeded: {stored} states stored, budget {budget}")]
    StateBudgetExceeded { stored: u64, budget: u64 },

    #[error("not an interval: the first permutation is not below the second in the weak order")]
    NotAnInterval,

    #[error("alpha must satisfy 1/3 < alpha <= 1/2, got {0}")]
    AlphaOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
