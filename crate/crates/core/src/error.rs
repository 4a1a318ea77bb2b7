use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid base {0}: bases must be at least 2")]
    InvalidBase(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("empty word cannot be repeated")]
    EmptyWord,
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid exponent: root index must be at least 1")]
    InvalidExponent,
    #[error("quadratic ring mismatch: Z[sqrt({0})] vs Z[sqrt({1})]")]
    RingMismatch(String, String),
    #[error("invalid quadratic ring: D = {0} must be a non-square integer >= 2")]
    InvalidRing(String),
    #[error("factoring budget exceeded on {0}")]
    BudgetExceeded(String),
    #[error("base {0} unresolved: factoring budget exceeded")]
    UnresolvedBase(u64),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("bad norm family: {0}")]
    BadFamily(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("malformed corpus at line {line}: {message}")]
    MalformedCorpus { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
