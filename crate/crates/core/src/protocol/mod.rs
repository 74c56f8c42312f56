//! The learner/oracle protocol.
//!
//! A [`Learner`] is a resumable state machine: it is resumed with the answer
//! to its previous [`Query`] and either needs another answer or is done.
//! An [`Oracle`] answers queries about a hidden target. [`Session`] sits
//! between the two, counting and recording every oracle call.

mod oracle;
mod session;
mod stats;

use std::fmt;

use serde::Serialize;

use crate::concepts::{ConceptDesc, Point};
use crate::error::Result;

pub use oracle::{
    check_answer, consistent_concepts, consistent_with_transcript, honest_answer, CexPolicy,
    HonestOracle, OracleState,
};
pub use session::{render_transcript, run_session, Session, SessionResult, Transcript};
pub use stats::{record_query, QueryStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum QueryKind {
    OnePos,
    Pos,
    Mem,
    #[serde(rename = "EQ")]
    Eq,
    Sub,
    Sup,
    #[serde(rename = "EX")]
    Ex,
}

impl QueryKind {
    pub const ALL: [QueryKind; 7] = [
        QueryKind::OnePos,
        QueryKind::Pos,
        QueryKind::Mem,
        QueryKind::Eq,
        QueryKind::Sub,
        QueryKind::Sup,
        QueryKind::Ex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QueryKind::OnePos => "OnePos",
            QueryKind::Pos => "Pos",
            QueryKind::Mem => "Mem",
            QueryKind::Eq => "EQ",
            QueryKind::Sub => "Sub",
            QueryKind::Sup => "Sup",
            QueryKind::Ex => "EX",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Query {
    /// A single positive example, with no freshness requirement.
    OnePos,
    /// A positive example not issued before.
    Pos,
    Mem(Point),
    Eq(ConceptDesc),
    Sub(ConceptDesc),
    Sup(ConceptDesc),
    /// A labeled draw from the sampling distribution.
    Ex,
}

impl Query {
    pub fn kind(&self) -> QueryKind {
        match self {
            Query::OnePos => QueryKind::OnePos,
            Query::Pos => QueryKind::Pos,
            Query::Mem(_) => QueryKind::Mem,
            Query::Eq(_) => QueryKind::Eq,
            Query::Sub(_) => QueryKind::Sub,
            Query::Sup(_) => QueryKind::Sup,
            Query::Ex => QueryKind::Ex,
        }
    }

    pub fn concept(&self) -> Option<&ConceptDesc> {
        match self {
            Query::Eq(c) | Query::Sub(c) | Query::Sup(c) => Some(c),
            _ => None,
        }
    }

    /// Builds the concept query of `kind`; `None` if `kind` carries no concept.
    pub fn with_concept(kind: QueryKind, c: ConceptDesc) -> Option<Query> {
        match kind {
            QueryKind::Eq => Some(Query::Eq(c)),
            QueryKind::Sub => Some(Query::Sub(c)),
            QueryKind::Sup => Some(Query::Sup(c)),
            _ => None,
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.kind())?;
        match self {
            Query::Mem(x) => write!(f, "{x}"),
            Query::Eq(c) | Query::Sub(c) | Query::Sup(c) => write!(f, "{c}"),
            Query::OnePos | Query::Pos | Query::Ex => f.write_str("-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Counterexample(Point),
    Positive(Point),
    /// Reply to `Pos` when every member of the target has been issued.
    NoSuchExample,
    Labeled(Point, bool),
}

impl Answer {
    pub fn from_bool(b: bool) -> Answer {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => f.write_str("yes"),
            Answer::No => f.write_str("no"),
            Answer::Counterexample(x) => write!(f, "cex {x}"),
            Answer::Positive(x) => write!(f, "pos {x}"),
            Answer::NoSuchExample => f.write_str("none"),
            Answer::Labeled(x, l) => write!(f, "label {x} {l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnerEvent {
    Need(Query),
    Done(ConceptDesc),
}

pub trait Learner {
    /// Advances the learner. The first call passes `None`; every later call
    /// passes the answer to the query of the previous `Need`. Once `Done` has
    /// been returned, further calls return the same `Done`.
    fn resume(&mut self, answer: Option<Answer>) -> Result<LearnerEvent>;
}

impl<L: Learner + ?Sized> Learner for Box<L> {
    fn resume(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        (**self).resume(answer)
    }
}

pub trait Oracle {
    fn answer(&mut self, query: &Query) -> Result<Answer>;
}

impl<F: FnMut(&Query) -> Result<Answer>> Oracle for F {
    fn answer(&mut self, query: &Query) -> Result<Answer> {
        self(query)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_kinds_render_uniquely() {
        let names: std::collections::BTreeSet<_> =
            QueryKind::ALL.iter().map(|k| k.to_string()).collect();
        assert_eq!(names.len(), 7);
        assert_eq!(QueryKind::Eq.to_string(), "EQ");
    }

    #[test]
    fn payload_shape_follows_kind() {
        let c = ConceptDesc::interval(1, 2);
        for kind in QueryKind::ALL {
            let q = Query::with_concept(kind, c.clone());
            assert_eq!(
                q.is_some(),
                matches!(kind, QueryKind::Eq | QueryKind::Sub | QueryKind::Sup)
            );
            if let Some(q) = q {
                assert_eq!(q.kind(), kind);
                assert_eq!(q.concept(), Some(&c));
            }
        }
        assert_eq!(Query::Mem(Point::Int(3)).to_string(), "Mem 3");
        assert_eq!(Query::Pos.to_string(), "Pos -");
    }
}
