use thiserror::Error;

use crate::protocol::{QueryStats, Transcript};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What a session had accumulated when it was cut short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partial {
    pub stats: QueryStats,
    pub transcript: Transcript,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("unsupported query: {0}")]
    UnsupportedQuery(String),
    #[error("query budget of {budget} exhausted")]
    BudgetExhausted { budget: u64, partial: Box<Partial> },
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("positive example {0} is not in the target")]
    InvalidPositiveExample(String),
    #[error("class {0} contains the empty concept")]
    EmptyConceptClass(String),
    #[error("universe exhausted after {0} positive examples")]
    UniverseExhausted(usize),
    #[error("fresh values exhausted below bound {0}")]
    FreshValuesExhausted(u32),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no consistent hypothesis")]
    NoConsistentHypothesis,
    #[error("learner received inconsistent answers: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// The partial session carried by [`Error::BudgetExhausted`].
    pub fn partial(&self) -> Option<&Partial> {
        match self {
            Error::BudgetExhausted { partial, .. } => Some(partial),
            _ => None,
        }
    }
}
