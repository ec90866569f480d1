use thiserror::Error;

use crate::pattern::Symbol;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("symbol {symbol} is outside the alphabet (forbidden pattern #{pattern_index})")]
    SymbolOutsideAlphabet { pattern_index: usize, symbol: Symbol },

    #[error("symbol {0} is outside the alphabet")]
    UnknownSymbol(Symbol),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("search budget of {budget} assignments exhausted before a verdict")]
    BudgetExhausted { budget: u64 },

    #[error("word length {n} is below the exactness threshold {required}")]
    BelowThreshold { n: usize, required: usize },

    #[error("operation refused: {0}")]
    Refused(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction that must succeed did not; indicates a defect rather than bad input.
    #[error("construction defect: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
