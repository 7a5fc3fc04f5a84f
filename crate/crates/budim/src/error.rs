use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("digit {digit} out of range for alphabet of size {n}")]
    DigitOutOfRange { digit: i64, n: u32 },
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("empty word where a block of length >= 1 is required")]
    EmptyWord,
    #[error("generalized Thue-Morse seed must end in a digit >= 1")]
    InvalidSeed,
    #[error("base {0} outside the valid range for this operation")]
    BaseOutOfRange(String),
    #[error("x outside [0, (N-1)/(beta-1)]")]
    XOutOfRange,
    #[error("digit decision at index {index} is within the tie tolerance")]
    NearTie { index: usize },
    #[error("stream is not eventually periodic")]
    NotEventuallyPeriodic,
    #[error("comparison undecided within depth {0}")]
    DepthExceeded(usize),
    #[error("sequence is not a valid quasi-greedy expansion of 1")]
    NotQuasiGreedy,
    #[error("block is not admissible")]
    NotAdmissible,
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("subshift graph has no vertices")]
    EmptyGraph,
    #[error("interval relation undecided at the given tolerance")]
    Undecided,
    #[error("mismatched alphabets ({0} vs {1})")]
    AlphabetMismatch(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
