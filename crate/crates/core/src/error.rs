use thiserror::Error;

/// Errors raised by the library. Each variant maps onto a distinct CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    SizeExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("arrangement is not totally unimodular: {0}")]
    NotTotallyUnimodular(String),

    #[error("element {0} is a coloop")]
    IsColoop(String),

    #[error("element {0} is a loop")]
    IsLoop(String),

    #[error("element {0} is a loop or a coloop")]
    LoopOrColoop(String),

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: expected {expected}, found {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("evaluation on an empty point set")]
    EmptyPointSet,

    #[error("degree {requested} exceeds the top filtration degree {top}")]
    DegreeOverflow { requested: usize, top: usize },

    #[error("function is not integral in the requested filtration piece (degree {0})")]
    NotIntegral(usize),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::SizeExceeded {
            what,
            limit,
            actual,
        }
    }
}
