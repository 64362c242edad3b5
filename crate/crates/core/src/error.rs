use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no prime in [{lo}, {hi}]")]
    NoPrimeInRange { lo: u64, hi: u64 },

    #[error("invalid desk parameters: {0}")]
    InvalidDeskParams(String),

    #[error("parameters not runnable: {0}")]
    ParamsInvalid(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("functions live on different groups")]
    GroupMismatch,

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("function is not normalized (l2 norm {0})")]
    NotNormalized(f64),

    #[error("GHZ input has odd parity")]
    OddParityInput,

    #[error("search space of {size} exceeds the enumeration ceiling {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("set is not parity-balanced")]
    NotParityBalanced,

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("qubit {index} out of range for a {qubits}-qubit state")]
    IndexOutOfRange { index: usize, qubits: usize },

    #[error("d = {d} exceeds the rewinding budget of {max}")]
    DTooLarge { d: usize, max: usize },

    #[error("best_score needs at least one (y, b) pair")]
    EmptyPairs,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
