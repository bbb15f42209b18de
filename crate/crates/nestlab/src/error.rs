//! Error taxonomy shared by every module.
//!
//! Two failure classes matter to callers: bad input (precondition or parse
//! violations, exit code 2 in the CLI) and capacity limits (a search or scan
//! would exceed its configured bound, exit code 3).

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the operation's input was violated.
    #[error("input error: {0}")]
    Input(String),

    /// Structured text (instance file or expression) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// The request exceeds a hard capacity bound.
    #[error("capacity error: {what} is {got}, bound is {bound}")]
    Capacity {
        what: &'static str,
        got: usize,
        bound: usize,
    },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn capacity(what: &'static str, got: usize, bound: usize) -> Self {
        Error::Capacity { what, got, bound }
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse(_) => 2,
            Error::Capacity { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
