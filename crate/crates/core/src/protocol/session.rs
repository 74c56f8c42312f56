use std::fmt::Write as _;

use super::{Answer, Learner, LearnerEvent, Oracle, Query, QueryStats};
use crate::concepts::ConceptDesc;
use crate::error::{Error, Partial, Result};

pub type Transcript = Vec<(Query, Answer)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionResult {
    pub hypothesis: ConceptDesc,
    pub stats: QueryStats,
    pub transcript: Transcript,
    /// The answers each sublearner received from its combinator, if any.
    pub sub_transcripts: Vec<Transcript>,
}

/// A budgeted, recorded connection to an oracle.
pub struct Session<'a> {
    oracle: &'a mut dyn Oracle,
    budget: u64,
    stats: QueryStats,
    transcript: Transcript,
}

impl<'a> Session<'a> {
    pub fn new(oracle: &'a mut dyn Oracle, budget: u64) -> Self {
        Session { oracle, budget, stats: QueryStats::new(), transcript: Vec::new() }
    }

    pub fn ask(&mut self, query: Query) -> Result<Answer> {
        if self.stats.total >= self.budget {
            return Err(Error::BudgetExhausted {
                budget: self.budget,
                partial: Box::new(Partial {
                    stats: self.stats.clone(),
                    transcript: self.transcript.clone(),
                }),
            });
        }
        let answer = self.oracle.answer(&query)?;
        self.stats.record(query.kind());
        self.transcript.push((query, answer.clone()));
        Ok(answer)
    }

    pub fn stats(&self) -> &QueryStats {
        &self.stats
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Pumps `learner` until it is done, routing its queries through this session.
    pub fn drive(&mut self, learner: &mut dyn Learner) -> Result<ConceptDesc> {
        let mut answer = None;
        loop {
            match learner.resume(answer.take())? {
                LearnerEvent::Done(h) => return Ok(h),
                LearnerEvent::Need(q) => answer = Some(self.ask(q)?),
            }
        }
    }

    pub fn finish(self, hypothesis: ConceptDesc, sub_transcripts: Vec<Transcript>) -> SessionResult {
        SessionResult { hypothesis, stats: self.stats, transcript: self.transcript, sub_transcripts }
    }
}

pub fn run_session(
    learner: &mut dyn Learner,
    oracle: &mut dyn Oracle,
    budget: u64,
) -> Result<SessionResult> {
    if budget == 0 {
        return Err(Error::Domain("session budget must be positive".into()));
    }
    let mut session = Session::new(oracle, budget);
    let h = session.drive(learner)?;
    Ok(session.finish(h, Vec::new()))
}

/// One line per exchange: `<index> <kind> <payload> -> <answer>`, 1-based.
pub fn render_transcript(t: &Transcript) -> String {
    let mut out = String::new();
    for (i, (q, a)) in t.iter().enumerate() {
        let _ = writeln!(out, "{} {q} -> {a}", i + 1);
    }
    out
}
