use thiserror::Error;

/// Errors raised by validation and evaluation throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed word `{0}`")]
    MalformedWord(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("operation needs a free group: {0}")]
    NotFree(String),
    #[error("inconsistent quotient data: {0}")]
    InconsistentQuotient(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("dimension mismatch: {0}")]
    Mismatch(String),
    #[error("element outside the represented window: {0}")]
    WindowEscape(String),
    #[error("support is not product-closed: {0}")]
    SupportNotProductClosed(String),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("search space of size {size} exceeds cap {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error("pairs are not composable: {0}")]
    NotComposable(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid field `{field}`: {msg}")]
    Field { field: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
