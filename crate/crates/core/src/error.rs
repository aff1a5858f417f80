use std::path::PathBuf;

use thiserror::Error;

use crate::model::Solution;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    /// The search hit its node budget. The incumbent, when one exists, is the
    /// best selection seen so far and is never marked optimal.
    #[error("node budget of {budget} exhausted after {nodes} nodes")]
    BudgetExhausted {
        budget: u64,
        nodes: u64,
        incumbent: Option<Box<Solution>>,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.into(),
            message: message.into(),
        }
    }
}
