use thiserror::Error;

/// Errors raised by the library. Degenerate bodies are never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch { context: String, expected: usize, found: usize },
    #[error("negative scale factor")]
    NegativeScale,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("wrong number of arguments: expected {expected}, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("simplex needs {expected} vertices, found {found}")]
    WrongVertexCount { expected: usize, found: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("ambient dimension {dim} exceeds the cost guard {limit}")]
    CostGuard { dim: usize, limit: usize },
    #[error("cut {0} is not strictly inside the box")]
    CutOutsideBox(String),
    #[error("valuation is not translation invariant")]
    NotTranslationInvariant,
    #[error("embedding is not a coordinate isometry")]
    NotIsometric,
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("split is not a coordinate decomposition: {0}")]
    MisalignedSplit(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("invalid input at {path}: {message}")]
    Invalid { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_check(context: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context: context.to_string(),
            expected,
            found,
        })
    }
}
