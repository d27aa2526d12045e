use thiserror::Error;

use crate::term::Position;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch at {position}: expected {expected}, found {found}")]
    ArityMismatch { position: Position, expected: String, found: String },

    #[error("bad index at {position}: {detail}")]
    BadIndex { position: Position, detail: String },

    #[error("invalid position {0}")]
    InvalidPosition(Position),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("json error at {path}: {message}")]
    Json { path: String, message: String },

    #[error("fuel exhausted on input {input}")]
    FuelExhausted { input: String },

    #[error("input has {found} coordinates but the term expects {expected}")]
    InputLength { expected: usize, found: usize },

    #[error("proof step {index} does not apply: {detail}")]
    StepMismatch { index: usize, detail: String },

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
