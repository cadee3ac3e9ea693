use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("universe of size {0} exceeds the maximum of {max}", max = crate::MAX_UNIVERSE)]
    UniverseTooLarge(usize),

    #[error("sets or families belong to different universes")]
    UniverseMismatch,

    #[error("family does not cover the universe; uncovered: {}", .uncovered.join(","))]
    NotACover { uncovered: Vec<String> },

    #[error("candidate base contains a set that is not open")]
    NotSubfamily,

    #[error("universe size {0} is outside the enumerable range 1..=4")]
    SizeOutOfRange(usize),

    #[error("unknown proposition {0:?}")]
    UnknownProposition(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid relation document: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
