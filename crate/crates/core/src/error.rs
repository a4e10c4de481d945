use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    Dimension {
        what: String,
        expected: usize,
        found: usize,
    },

    /// A constructor refused its input because a verifier reported failures.
    #[error("{what} failed verification: {}", .report.failure_summary())]
    Verification { what: String, report: Box<Report> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration refused: group order {order} exceeds the bound {bound}")]
    EnumerationBound { order: usize, bound: usize },

    #[error("not closed: {0}")]
    NotClosed(String),

    /// A mechanical check contradicted a statement that must hold for valid
    /// input; signals a defective input certificate or a bug.
    #[error("contradiction in {what}: {}", .report.failure_summary())]
    Contradiction { what: String, report: Box<Report> },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn verification(what: impl Into<String>, report: Report) -> Self {
        Error::Verification {
            what: what.into(),
            report: Box::new(report),
        }
    }

    pub(crate) fn contradiction(what: impl Into<String>, report: Report) -> Self {
        Error::Contradiction {
            what: what.into(),
            report: Box::new(report),
        }
    }

    pub(crate) fn dim(what: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::Dimension {
            what: what.into(),
            expected,
            found,
        }
    }
}
