use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension {0} is not 2, 4 or 8")]
    BadDimension(usize),

    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace deviates from 1 by {0:e}")]
    BadTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("qubit {label} does not exist in a {qubits}-qubit register")]
    InvalidQubit { label: char, qubits: usize },

    #[error("invalid qubit set: {0}")]
    InvalidQubitSet(String),

    #[error("amplitudes are not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("reservoir is in the {actual} regime, {expected} required")]
    WrongRegime {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("unknown figure id {0:?}")]
    UnknownFigure(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
