use std::collections::BTreeSet;

use super::{Answer, Oracle, Query, Transcript};
use crate::concepts::{contains, diff_witness, equivalent, members, subset_of, witness};
use crate::concepts::{ClassId, ConceptDesc, Point};
use crate::error::{Error, Result};

/// Which side of a symmetric difference an equivalence counterexample comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CexPolicy {
    /// Least point of the whole symmetric difference.
    #[default]
    Least,
    /// Least point of `target \ query` when there is one.
    PreferPositive,
    /// Least point of `query \ target` when there is one.
    PreferNegative,
}

#[derive(Clone, Debug, Default)]
pub struct OracleState {
    pub issued: BTreeSet<Point>,
    pub policy: CexPolicy,
}

impl OracleState {
    pub fn with_policy(policy: CexPolicy) -> Self {
        OracleState { issued: BTreeSet::new(), policy }
    }
}

fn check_query(class: &ClassId, query: &Query) -> Result<()> {
    match query {
        Query::Mem(x) => class.check_point(x),
        Query::Eq(c) | Query::Sub(c) | Query::Sup(c) => class.check_concept(c),
        _ => Ok(()),
    }
}

/// Answers `query` truthfully about `target`, with least counterexamples.
pub fn honest_answer(
    class: &ClassId,
    target: &ConceptDesc,
    query: &Query,
    state: &mut OracleState,
) -> Result<Answer> {
    check_query(class, query)?;
    let cex = |w: Option<Point>| w.map_or(Answer::Yes, Answer::Counterexample);
    Ok(match query {
        Query::Mem(x) => Answer::from_bool(contains(class, target, x)?),
        Query::Sub(c) => cex(diff_witness(class, c, target)?),
        Query::Sup(c) => cex(diff_witness(class, target, c)?),
        Query::Eq(c) => {
            let neg = diff_witness(class, c, target)?;
            let pos = diff_witness(class, target, c)?;
            cex(match state.policy {
                CexPolicy::Least => match (neg, pos) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                },
                CexPolicy::PreferPositive => pos.or(neg),
                CexPolicy::PreferNegative => neg.or(pos),
            })
        }
        Query::OnePos => witness(class, target).map_or(Answer::NoSuchExample, Answer::Positive),
        Query::Pos => {
            let fresh = members(class, target)?.find(|x| !state.issued.contains(x));
            match fresh {
                Some(x) => {
                    state.issued.insert(x.clone());
                    Answer::Positive(x)
                }
                None => Answer::NoSuchExample,
            }
        }
        Query::Ex => {
            return Err(Error::UnsupportedQuery(
                "EX queries need a distribution; use the pac module".into(),
            ))
        }
    })
}

/// An oracle answering truthfully about an explicit target.
#[derive(Clone, Debug)]
pub struct HonestOracle {
    class: ClassId,
    target: ConceptDesc,
    state: OracleState,
}

impl HonestOracle {
    pub fn new(class: ClassId, target: ConceptDesc) -> Result<Self> {
        Self::with_policy(class, target, CexPolicy::Least)
    }

    pub fn with_policy(class: ClassId, target: ConceptDesc, policy: CexPolicy) -> Result<Self> {
        class.check_concept(&target)?;
        Ok(HonestOracle { class, target, state: OracleState::with_policy(policy) })
    }

    pub fn class(&self) -> &ClassId {
        &self.class
    }

    pub fn target(&self) -> &ConceptDesc {
        &self.target
    }
}

impl Oracle for HonestOracle {
    fn answer(&mut self, query: &Query) -> Result<Answer> {
        honest_answer(&self.class, &self.target, query, &mut self.state)
    }
}

/// Whether `answer` is a permissible reply to `query` if the target were
/// `target` and `issued` were the positives handed out so far.
pub fn check_answer(
    class: &ClassId,
    target: &ConceptDesc,
    query: &Query,
    answer: &Answer,
    issued: &BTreeSet<Point>,
) -> Result<bool> {
    check_query(class, query)?;
    let point_ok = |x: &Point| class.check_point(x).is_ok();
    Ok(match (query, answer) {
        (Query::Mem(x), Answer::Yes) => contains(class, target, x)?,
        (Query::Mem(x), Answer::No) => !contains(class, target, x)?,
        (Query::Sub(c), Answer::Yes) => subset_of(class, c, target)?,
        (Query::Sup(c), Answer::Yes) => subset_of(class, target, c)?,
        (Query::Eq(c), Answer::Yes) => equivalent(class, c, target)?,
        (Query::Sub(c), Answer::Counterexample(x)) => {
            point_ok(x) && contains(class, c, x)? && !contains(class, target, x)?
        }
        (Query::Sup(c), Answer::Counterexample(x)) => {
            point_ok(x) && contains(class, target, x)? && !contains(class, c, x)?
        }
        (Query::Eq(c), Answer::Counterexample(x)) => {
            point_ok(x) && contains(class, c, x)? != contains(class, target, x)?
        }
        (Query::OnePos, Answer::Positive(x)) => point_ok(x) && contains(class, target, x)?,
        (Query::OnePos, Answer::NoSuchExample) => witness(class, target).is_none(),
        (Query::Pos, Answer::Positive(x)) => {
            point_ok(x) && !issued.contains(x) && contains(class, target, x)?
        }
        (Query::Pos, Answer::NoSuchExample) => members(class, target)?.all(|x| issued.contains(&x)),
        (Query::Ex, Answer::Labeled(x, l)) => point_ok(x) && contains(class, target, x)? == *l,
        _ => false,
    })
}

/// Whether `c` could have been the target behind every exchange of `transcript`.
pub fn consistent_with_transcript(
    class: &ClassId,
    c: &ConceptDesc,
    transcript: &Transcript,
) -> Result<bool> {
    let mut issued = BTreeSet::new();
    for (q, a) in transcript {
        if !check_answer(class, c, q, a, &issued)? {
            return Ok(false);
        }
        if let (Query::Pos, Answer::Positive(x)) = (q, a) {
            issued.insert(x.clone());
        }
    }
    Ok(true)
}

/// Every concept of the class consistent with `transcript`, by enumeration.
pub fn consistent_concepts(class: &ClassId, transcript: &Transcript) -> Result<Vec<ConceptDesc>> {
    let mut out = Vec::new();
    for c in class.concepts()? {
        if consistent_with_transcript(class, &c, transcript)? {
            out.push(c);
        }
    }
    Ok(out)
}
