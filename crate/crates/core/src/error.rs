use thiserror::Error;

use crate::algebra::{Basis, VarId};

/// Errors raised across the laboratory.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^62")]
    BadModulus(u64),
    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("field mismatch: expected p={expected}, found p={found}")]
    FieldMismatch { expected: u64, found: u64 },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scale limit exceeded: {what} is {got}, limit {limit}")]
    ScaleLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("no value assigned to {0}")]
    MissingAssignment(VarId),
    #[error("{0} and its twin are assigned inconsistently")]
    InconsistentTwin(VarId),
    #[error("variable {0} is not part of this formula family")]
    ForeignVariable(VarId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid proof at line {line}: {reason}")]
    InvalidProof { line: usize, reason: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
