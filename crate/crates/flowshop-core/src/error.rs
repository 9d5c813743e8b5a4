use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A machine or job index is outside `1..=M` / `1..=N`.
    IndexOutOfRange { what: &'static str, index: usize, limit: usize },
    /// Matrix dimensions disagree with the declared counts or with each other.
    DimensionMismatch(String),
    /// An entry or parameter is outside its valid domain.
    Domain(String),
    /// The grid has too many monotone paths to enumerate.
    GridTooLarge { rows: usize, cols: usize, limit: usize },
    /// The least-squares problem is degenerate.
    Fit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { what, index, limit } => {
                write!(f, "{what} index {index} out of range 1..={limit}")
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::GridTooLarge { rows, cols, limit } => {
                write!(f, "{rows}x{cols} grid too large to enumerate (rows + cols must be <= {limit})")
            }
            Error::Fit(msg) => write!(f, "fit error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
