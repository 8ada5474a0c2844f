use std::fmt;

use thiserror::Error;

/// A syntax or semantic error in polynomial/operator text, with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted at this position; empty for semantic errors.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {vars} variables")]
    VarIndexOutOfRange { index: usize, vars: usize },
    #[error("multi-index length {found} does not match {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parts do not sum to the multi-index being split")]
    SplitMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("slot index {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("the zero operator has no order")]
    ZeroOperator,
    #[error("operator does not vanish on constants")]
    NotConstantFree,
    #[error("operator order {order} exceeds bound {bound}")]
    OrderExceeded { order: usize, bound: usize },
    #[error("operator is not a Hochschild cocycle")]
    NotCocycle,
    #[error("operator does not lie in the window {window}")]
    OutsideWindow { window: String },
    #[error("no primitive found in window {window}; enlarge the degree slack")]
    NoSolution { window: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

impl Error {
    /// True for errors caused by unreadable input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Malformed(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
