use thiserror::Error;

use crate::ff::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not 2 or an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("value {value} is not a canonical residue modulo {modulus}")]
    NonCanonical { value: u32, modulus: u32 },
    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not a zero forcing set: closure colors {colored} of {total} vertices")]
    NotZeroForcingSet { colored: usize, total: usize },
    #[error("forcing plan does not match matrix: {0}")]
    PlanMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch { op, detail: detail.into() }
    }
}
