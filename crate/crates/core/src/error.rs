use capgraph_lp::LpError;
use thiserror::Error;

use crate::lattice::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("not a valid fuzzy measure: {0}")]
    Validation(ValidationReport),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("infeasible construction: {0}")]
    InfeasibleConstruction(String),
    #[error("indifference relation is not transitive within tolerance: criteria {0}, {1}, {2}")]
    Ambiguity(usize, usize, usize),
    #[error("solver failure: {0}")]
    Solver(#[from] LpError),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error at line {line}, field {field}: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed measure file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
