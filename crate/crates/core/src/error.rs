use thiserror::Error;

/// Errors raised by the library.
///
/// Constraint violations that callers are expected to inspect (a triple with
/// mismatched diagonals, a non-unitary operator in a report) are carried by
/// report types instead; these variants are for inputs an operation cannot
/// work with at all.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix {name} is {rows}x{cols}, expected a square {dim}x{dim} matrix")]
    Shape {
        name: &'static str,
        rows: usize,
        cols: usize,
        dim: usize,
    },

    #[error("operator side {0} is not a perfect square")]
    SideNotSquare(usize),

    #[error("not LDOI: entry ({row}, {col}) = {value:e} lies outside the invariant pattern")]
    NotLdoi { row: usize, col: usize, value: f64 },

    #[error("operator is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("numeric tolerance failure: {0}")]
    Numeric(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
