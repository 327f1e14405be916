use std::fmt;

use thiserror::Error;

/// A 1-based line/column position in a text input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {loc}: {msg}")]
    Parse { loc: Location, msg: String },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown identifier '{0}'")]
    Unknown(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("no stabilization: {0}")]
    NoStabilization(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
