use super::{check_kinds, currents, hypotheses, transcripts, SubRun};
use crate::concepts::{ConceptDesc, Point, SublearnerSpec};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Oracle, Query, QueryKind, Session, SessionResult, Transcript};

/// Learns a disjoint union; every sublearner uses queries of `mode`.
pub fn learn_disjoint_union(
    subs: &[SublearnerSpec],
    oracle: &mut dyn Oracle,
    mode: QueryKind,
    budget: u64,
) -> Result<SessionResult> {
    let mut session = Session::new(oracle, budget);
    let (h, t) = learn_disjoint_union_in(subs, &mut session, mode)?;
    Ok(session.finish(h, t))
}

pub fn learn_disjoint_union_in(
    subs: &[SublearnerSpec],
    session: &mut Session<'_>,
    mode: QueryKind,
) -> Result<(ConceptDesc, Vec<Transcript>)> {
    if !matches!(mode, QueryKind::Eq | QueryKind::Sub | QueryKind::Sup | QueryKind::Mem) {
        return Err(Error::UnsupportedQuery(format!("disjoint union with {mode}")));
    }
    check_kinds(subs, &[mode], "the disjoint-union learner")?;
    let mut runs = subs.iter().map(SubRun::start).collect::<Result<Vec<_>>>()?;
    if mode == QueryKind::Mem {
        for (i, run) in runs.iter_mut().enumerate() {
            while let Some(q) = run.pending().cloned() {
                let Query::Mem(x) = q else {
                    return Err(Error::ProtocolViolation(format!("Mem sublearner asked {q}")));
                };
                let a = session.ask(Query::Mem(Point::tagged(i, x)))?;
                run.feed(a)?;
            }
        }
    }
    while !runs.iter().all(SubRun::is_done) {
        let s = ConceptDesc::Union(currents(&runs)?);
        match session.ask(Query::with_concept(mode, s.clone()).expect("concept query"))? {
            Answer::Yes if mode == QueryKind::Eq => return Ok((s, transcripts(runs))),
            Answer::Yes => {
                for r in runs.iter_mut().filter(|r| !r.is_done()) {
                    r.feed(Answer::Yes)?;
                }
            }
            Answer::Counterexample(Point::Tagged(i, x)) => match runs.get_mut(i) {
                Some(r) if !r.is_done() => r.feed(Answer::Counterexample(*x))?,
                _ => {
                    return Err(Error::ProtocolViolation(format!(
                        "counterexample tagged {i} has no unfinished component"
                    )))
                }
            },
            other => {
                return Err(Error::ProtocolViolation(format!(
                    "{other} is not a tagged {mode} answer"
                )))
            }
        }
    }
    Ok((ConceptDesc::Union(hypotheses(&runs)), transcripts(runs)))
}
