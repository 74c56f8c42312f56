use crate::concepts::{ClassId, ConceptDesc, Point, Word};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Learner, LearnerEvent, Oracle, Query, QueryKind, Session, SessionResult};

/// Learns `c(s)` with EQ or Sub queries, starting from `s = λ`.
///
/// A negative counterexample `(s, m)` extends `s` by `m`; a positive one
/// `(t, m)` with `s` a strict prefix of `t` replaces `s` by `t`.
pub struct PrefixLearner {
    kind: QueryKind,
    max_len: usize,
    s: Word,
    done: bool,
}

impl PrefixLearner {
    pub fn new(kind: QueryKind, max_len: usize) -> Result<Self> {
        if !matches!(kind, QueryKind::Eq | QueryKind::Sub) {
            return Err(Error::UnsupportedQuery(format!("prefix learner with {kind}")));
        }
        Ok(PrefixLearner { kind, max_len, s: Word::empty(), done: false })
    }

    pub fn current(&self) -> &Word {
        &self.s
    }

    fn query(&self) -> LearnerEvent {
        let c = ConceptDesc::Prefix(self.s.clone());
        LearnerEvent::Need(Query::with_concept(self.kind, c).expect("concept query"))
    }
}

impl Learner for PrefixLearner {
    fn resume(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        if self.done {
            return Ok(LearnerEvent::Done(ConceptDesc::Prefix(self.s.clone())));
        }
        match answer {
            None => return Ok(self.query()),
            Some(Answer::Yes) => {
                self.done = true;
                return Ok(LearnerEvent::Done(ConceptDesc::Prefix(self.s.clone())));
            }
            Some(Answer::Counterexample(Point::Pair(t, m))) if t == self.s => {
                self.s = self.s.extended(m);
            }
            Some(Answer::Counterexample(Point::Pair(t, _)))
                if self.kind == QueryKind::Eq && self.s.is_strict_prefix_of(&t) =>
            {
                self.s = t;
            }
            Some(other) => {
                return Err(Error::ProtocolViolation(format!(
                    "{other} extends neither case for c({})",
                    self.s
                )))
            }
        }
        if self.s.len() > self.max_len {
            return Err(Error::ProtocolViolation(format!(
                "counterexample leads past the maximum length {}",
                self.max_len
            )));
        }
        Ok(self.query())
    }
}

/// Runs [`PrefixLearner`] against `oracle` for a prefix class.
pub fn learn_prefix_eq(
    class: &ClassId,
    oracle: &mut dyn Oracle,
    mode: QueryKind,
    budget: u64,
) -> Result<SessionResult> {
    let mut session = Session::new(oracle, budget);
    let h = learn_prefix_eq_in(class, &mut session, mode)?;
    Ok(session.finish(h, Vec::new()))
}

pub fn learn_prefix_eq_in(
    class: &ClassId,
    session: &mut Session<'_>,
    mode: QueryKind,
) -> Result<ConceptDesc> {
    let ClassId::Prefix { max_len, .. } = class else {
        return Err(Error::UniverseMismatch(format!("{class} is not a prefix class")));
    };
    let mut learner = PrefixLearner::new(mode, *max_len)?;
    session.drive(&mut learner)
}
