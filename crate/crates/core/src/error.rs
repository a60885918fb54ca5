use thiserror::Error;

/// Errors produced by hypermatrix construction, algebra, solvers and experiments.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("capacity exceeded: {what} needs {required}, limit is {limit}")]
    Capacity { what: String, required: u128, limit: u128 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("tracking broke down near t = {t}: {reason}")]
    Singular { t: f64, reason: String },

    #[error("integer overflow while computing {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, required: u128, limit: u128) -> Self {
        Error::Capacity {
            what: what.into(),
            required,
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
