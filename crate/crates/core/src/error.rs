// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Dimension or width mismatch between arguments.
    #[error("input error: {0}")]
    Input(String),

    /// The computation is exponential and the argument exceeds its exact budget.
    #[error("budget exceeded for {what}: limit {limit}, got {got}")]
    Budget { what: String, limit: usize, got: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Arguments are well-formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, limit: usize, got: usize) -> Self {
        Error::Budget { what: what.into(), limit, got }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
