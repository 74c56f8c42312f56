//! Learners for products and disjoint unions built from component learners.
//!
//! Each combinator poses queries about the composite target to the session
//! and acts as the oracle of its sublearners, forwarding only answers that
//! are correct for the sublearner's component target.

mod product_mem;
mod product_sup;
pub mod prefix;
mod union;

use crate::concepts::{witness, ClassId, ConceptDesc, Point, SublearnerSpec};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Learner, LearnerEvent, Query, QueryKind, Transcript};

pub use prefix::{learn_prefix_eq, learn_prefix_eq_in, PrefixLearner};
pub use product_mem::{
    learn_product_cex_mem_pos, learn_product_cex_mem_pos_in, learn_product_mem_only,
    learn_product_mem_only_in, learn_product_mem_pos, learn_product_mem_pos_in,
};
pub use product_sup::{learn_product_sup, learn_product_sup_in};
pub use union::{learn_disjoint_union, learn_disjoint_union_in};

/// A sublearner being simulated by a combinator.
pub(crate) struct SubRun {
    learner: Box<dyn Learner>,
    pending: Option<Query>,
    done: Option<ConceptDesc>,
    transcript: Transcript,
}

impl SubRun {
    pub(crate) fn start(spec: &SublearnerSpec) -> Result<Self> {
        let mut run = SubRun {
            learner: spec.spawn()?,
            pending: None,
            done: None,
            transcript: Vec::new(),
        };
        let ev = run.learner.resume(None)?;
        run.absorb(ev);
        Ok(run)
    }

    fn absorb(&mut self, ev: LearnerEvent) {
        match ev {
            LearnerEvent::Need(q) => self.pending = Some(q),
            LearnerEvent::Done(h) => {
                self.pending = None;
                self.done = Some(h);
            }
        }
    }

    /// Answers the pending query.
    pub(crate) fn feed(&mut self, answer: Answer) -> Result<()> {
        let q = self
            .pending
            .take()
            .ok_or_else(|| Error::ProtocolViolation("answer for a finished sublearner".into()))?;
        self.transcript.push((q, answer.clone()));
        let ev = self.learner.resume(Some(answer))?;
        self.absorb(ev);
        Ok(())
    }

    pub(crate) fn is_done(&self) -> bool {
        self.done.is_some()
    }

    pub(crate) fn hypothesis(&self) -> Option<&ConceptDesc> {
        self.done.as_ref()
    }

    pub(crate) fn pending(&self) -> Option<&Query> {
        self.pending.as_ref()
    }

    /// `S_i`: the hypothesis once done, otherwise the concept of the pending query.
    pub(crate) fn current(&self) -> Result<ConceptDesc> {
        if let Some(h) = &self.done {
            return Ok(h.clone());
        }
        match &self.pending {
            Some(q) => q.concept().cloned().ok_or_else(|| {
                Error::ProtocolViolation(format!("sublearner asked {q}, expected a concept query"))
            }),
            None => Err(Error::ProtocolViolation("sublearner never started".into())),
        }
    }

    pub(crate) fn into_transcript(self) -> Transcript {
        self.transcript
    }
}

pub(crate) fn check_kinds(subs: &[SublearnerSpec], allowed: &[QueryKind], what: &str) -> Result<()> {
    if subs.is_empty() {
        return Err(Error::Domain(format!("{what} needs at least one component")));
    }
    for s in subs {
        if !allowed.contains(&s.kind) {
            return Err(Error::UnsupportedQuery(format!(
                "{what} cannot drive a {} sublearner for {}",
                s.kind, s.class
            )));
        }
    }
    Ok(())
}

pub(crate) fn product_class(subs: &[SublearnerSpec]) -> ClassId {
    ClassId::Product(subs.iter().map(|s| s.class.clone()).collect())
}

pub(crate) fn coords(x: &Point, k: usize) -> Result<&[Point]> {
    match x.coords() {
        Some(c) if c.len() == k => Ok(c),
        _ => Err(Error::ProtocolViolation(format!("{x} is not a point of a {k}-fold product"))),
    }
}

pub(crate) fn currents(runs: &[SubRun]) -> Result<Vec<ConceptDesc>> {
    runs.iter().map(SubRun::current).collect()
}

pub(crate) fn hypotheses(runs: &[SubRun]) -> Vec<ConceptDesc> {
    runs.iter().map(|r| r.hypothesis().cloned().unwrap_or(ConceptDesc::Empty)).collect()
}

pub(crate) fn transcripts(runs: Vec<SubRun>) -> Vec<Transcript> {
    runs.into_iter().map(SubRun::into_transcript).collect()
}

/// Whether the part `c` of component `class` is extensionally empty.
pub(crate) fn part_is_empty(class: &ClassId, c: &ConceptDesc) -> bool {
    witness(class, c).is_none()
}
