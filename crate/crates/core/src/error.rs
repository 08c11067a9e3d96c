use thiserror::Error;

/// Errors raised by the series, invariant and KKV routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("class bases differ: weights {left:?} vs {right:?}")]
    BasisMismatch { left: Vec<u32>, right: Vec<u32> },

    #[error("invalid class basis: {0}")]
    InvalidBasis(String),

    #[error("series has a nonzero beta=0 part")]
    NonzeroConstantPart,

    #[error("beta=0 term is not exactly 1")]
    ConstantTermNotOne,

    #[error("window too narrow: {0}")]
    WindowTooNarrow(String),

    #[error("inconsistent DT input at beta={beta}: {detail}")]
    InconsistentInput { beta: String, detail: String },

    #[error("integrality violation at beta={beta} g={genus}: value {value}")]
    IntegralityViolation {
        beta: String,
        genus: u32,
        value: String,
    },

    #[error("missing GW entry beta={beta} g={genus}")]
    MissingEntry { beta: String, genus: u32 },

    #[error("{what} = {value} is out of range ({bound})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: String,
    },

    #[error("non-integral result: {0}")]
    NonIntegral(String),

    #[error("expected a {expected} DT series")]
    WrongSeriesKind { expected: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
