use alloc::string::String;

/// Errors raised by the oracles, solvers and generators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element index {index} out of range for ground set of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("basis family is empty")]
    EmptyFamily,
    #[error("basis family members have differing sizes")]
    RaggedFamily,
    #[error("ground set of size {size} exceeds the enumeration cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("ground set has {actual} elements but the grid needs {expected}")]
    GroundSizeMismatch { expected: usize, actual: usize },
    #[error("invalid grid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid double partition: {0}")]
    InvalidPartition(String),
    #[error("mu is zero; no block to select")]
    MuIsZero,
    #[error("block size {k} is not supported for {n} rows (need 3 <= k <= n)")]
    BadBlockSize { n: usize, k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;
