use std::collections::BTreeMap;

use crate::concepts::{ConceptDesc, Point};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Oracle, Query, QueryStats, Session};

use super::bounds::PacParams;
use super::sample::LabeledSample;
use super::subconcepts::{find_subconcepts, ConsistencyFinder, SubconceptSearch};

#[derive(Clone, Debug)]
pub struct PacOutcome {
    pub hypothesis: ConceptDesc,
    pub sample: LabeledSample,
    pub search: SubconceptSearch,
    pub stats: QueryStats,
}

#[derive(Clone, Debug)]
pub struct MemPacOutcome {
    pub hypothesis: ConceptDesc,
    pub sample: LabeledSample,
    /// The per-dimension samples handed to each subfinder.
    pub labels: Vec<Vec<(Point, bool)>>,
    pub stats: QueryStats,
}

fn draw(session: &mut Session, m: u64) -> Result<LabeledSample> {
    let mut entries = Vec::with_capacity(m as usize);
    for _ in 0..m {
        match session.ask(Query::Ex)? {
            Answer::Labeled(x, l) => entries.push((x, l)),
            a => return Err(Error::ProtocolViolation(format!("EX answered with {a}"))),
        }
    }
    Ok(LabeledSample { entries })
}

/// PAC-learns a two-fold product from EX draws alone.
pub fn pac_learn_product(
    params: &PacParams,
    oracle: &mut dyn Oracle,
    f1: &dyn ConsistencyFinder,
    f2: &dyn ConsistencyFinder,
) -> Result<PacOutcome> {
    let m = params.sample_size()?;
    let mut session = Session::new(oracle, m);
    let sample = draw(&mut session, m)?;
    let (pos, neg) = sample.split();
    let search = find_subconcepts(&pos, &neg, params.delta, f1, f2);
    let Some((c1, c2)) = search.result.clone() else {
        return Err(Error::NoConsistentHypothesis);
    };
    Ok(PacOutcome {
        hypothesis: ConceptDesc::Product(vec![c1, c2]),
        sample,
        search,
        stats: session.stats().clone(),
    })
}

/// PAC-learns a k-fold product from EX draws plus membership queries.
///
/// The first positive draw `p` fixes every coordinate but one, so each
/// negative `x` is labeled per dimension by `Mem(p[i←xᵢ])`. With no
/// positive draw the hypothesis is `∅`.
pub fn pac_learn_with_mem(
    params: &PacParams,
    oracle: &mut dyn Oracle,
    finders: &[&dyn ConsistencyFinder],
) -> Result<MemPacOutcome> {
    let k = finders.len();
    if k == 0 {
        return Err(Error::Domain("need at least one subfinder".into()));
    }
    let m = params.sample_size()?;
    let mut session = Session::new(oracle, m.saturating_mul(k as u64 + 1));
    let sample = draw(&mut session, m)?;
    let Some(p) = sample.entries.iter().find(|(_, l)| *l).map(|(x, _)| x.clone()) else {
        return Ok(MemPacOutcome {
            hypothesis: ConceptDesc::Empty,
            sample,
            labels: vec![Vec::new(); k],
            stats: session.stats().clone(),
        });
    };
    let pc = p.coords().filter(|c| c.len() == k).ok_or_else(|| {
        Error::UniverseMismatch(format!("positive draw {p} is not a {k}-tuple"))
    })?;

    let mut labels = vec![Vec::new(); k];
    let mut cache: BTreeMap<Point, bool> = BTreeMap::new();
    for (x, l) in &sample.entries {
        let xc = x
            .coords()
            .filter(|c| c.len() == k)
            .ok_or_else(|| Error::UniverseMismatch(format!("draw {x} is not a {k}-tuple")))?;
        for (i, xi) in xc.iter().enumerate() {
            let label = if *l || *xi == pc[i] {
                true
            } else {
                let q = p.substituted(i, xi.clone()).expect("arity checked");
                match cache.get(&q) {
                    Some(b) => *b,
                    None => {
                        let b = match session.ask(Query::Mem(q.clone()))? {
                            Answer::Yes => true,
                            Answer::No => false,
                            a => return Err(Error::ProtocolViolation(format!("Mem answered with {a}"))),
                        };
                        cache.insert(q, b);
                        b
                    }
                }
            };
            labels[i].push((xi.clone(), label));
        }
    }

    let (eps, delta) = (params.epsilon / k as f64, params.delta / k as f64);
    let parts = finders
        .iter()
        .zip(&labels)
        .map(|(f, ls)| f.find(ls, eps, delta).ok_or(Error::NoConsistentHypothesis))
        .collect::<Result<Vec<_>>>()?;
    Ok(MemPacOutcome {
        hypothesis: ConceptDesc::Product(parts),
        sample,
        labels,
        stats: session.stats().clone(),
    })
}
