use thiserror::Error;

use crate::group::Elem;
use crate::soft::ConditionReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration would exceed the configured element budget.
    #[error("{what}: size {size} exceeds the budget of {limit}")]
    Budget {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("algebra: {0}")]
    Algebra(String),

    #[error("group axioms fail: {0}")]
    GroupAxiom(String),

    #[error("not a subgroup: {a} * {b} leaves the set")]
    NotSubgroup { a: Elem, b: Elem },

    #[error("soft conditions fail:\n{0}")]
    NotSoft(Box<ConditionReport>),

    #[error("incidence structure: {0}")]
    Plane(String),

    #[error("collineation action: {0}")]
    Action(String),

    #[error("extraction: {0}")]
    Extraction(String),

    #[error("construction: {0}")]
    Construction(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, size: usize, limit: usize) -> Self {
        Error::Budget {
            what: what.into(),
            size,
            limit,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for refusals caused by size caps rather than by mathematics.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }

    /// True for malformed input files or arguments.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Io(_) | Error::InvalidInput(_)
        )
    }
}
