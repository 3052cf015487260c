use thiserror::Error;

/// Errors produced by the simulator, oracle and experiment layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid register width {n}: must be in 1..={max}")]
    InvalidWidth { n: usize, max: usize },

    #[error("dimension mismatch: expected width {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis index {value} out of range for width {width}")]
    IndexOutOfRange { value: u64, width: usize },

    #[error("amplitude vector of length {len} is not a power of two in range")]
    BadLength { len: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("DIMACS parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("refusing exhaustive enumeration over {n} bits (cap is {max})")]
    EnumerationRefused { n: usize, max: usize },

    #[error("search requires exactly one solution, found {count}")]
    NotUnique { count: usize },

    #[error("invalid schedule: {0}")]
    Schedule(String),

    #[error("state is outside the Grover plane: {0}")]
    Geometry(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
