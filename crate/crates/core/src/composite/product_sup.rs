use super::{check_kinds, coords, currents, hypotheses, product_class, transcripts, SubRun};
use crate::concepts::{contains, ConceptDesc, SublearnerSpec};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Oracle, Query, QueryKind, Session, SessionResult};

/// Learns a product from superset queries.
pub fn learn_product_sup(
    subs: &[SublearnerSpec],
    oracle: &mut dyn Oracle,
    budget: u64,
) -> Result<SessionResult> {
    let mut session = Session::new(oracle, budget);
    let (h, t) = learn_product_sup_in(subs, &mut session)?;
    Ok(session.finish(h, t))
}

pub fn learn_product_sup_in(
    subs: &[SublearnerSpec],
    session: &mut Session<'_>,
) -> Result<(ConceptDesc, Vec<crate::protocol::Transcript>)> {
    check_kinds(subs, &[QueryKind::Sup], "the superset product learner")?;
    let class = product_class(subs);
    let k = subs.len();
    if class.contains_empty() && session.ask(Query::Sup(ConceptDesc::Empty))? == Answer::Yes {
        return Ok((ConceptDesc::Empty, vec![Vec::new(); k]));
    }
    let mut runs = subs.iter().map(SubRun::start).collect::<Result<Vec<_>>>()?;
    while !runs.iter().all(SubRun::is_done) {
        let parts = currents(&runs)?;
        match session.ask(Query::Sup(ConceptDesc::Product(parts.clone())))? {
            Answer::Yes => {
                for r in runs.iter_mut().filter(|r| !r.is_done()) {
                    r.feed(Answer::Yes)?;
                }
            }
            Answer::Counterexample(x) => {
                let xs = coords(&x, k)?;
                let mut credited = false;
                for (i, r) in runs.iter_mut().enumerate() {
                    if contains(&subs[i].class, &parts[i], &xs[i])? {
                        continue;
                    }
                    if r.is_done() {
                        return Err(Error::ProtocolViolation(format!(
                            "counterexample {x} blames finished dimension {i}"
                        )));
                    }
                    r.feed(Answer::Counterexample(xs[i].clone()))?;
                    credited = true;
                }
                if !credited {
                    return Err(Error::ProtocolViolation(format!(
                        "counterexample {x} lies inside the queried product"
                    )));
                }
            }
            other => {
                return Err(Error::ProtocolViolation(format!("{other} is not a Sup answer")))
            }
        }
    }
    let h = ConceptDesc::Product(hypotheses(&runs));
    Ok((h, transcripts(runs)))
}
