use std::collections::{BTreeMap, BTreeSet};

use super::{check_kinds, coords, currents, hypotheses, part_is_empty, product_class, transcripts, SubRun};
use crate::concepts::{all_negative_run, cartesian, contains, ConceptDesc, Point, SublearnerSpec};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Oracle, Query, QueryKind, Session, SessionResult, Transcript};

type Learned = (ConceptDesc, Vec<Transcript>);

/// Membership answers already paid for.
#[derive(Default)]
struct MemCache {
    answers: BTreeMap<Point, bool>,
}

impl MemCache {
    fn ask(&mut self, session: &mut Session<'_>, x: &Point) -> Result<bool> {
        if let Some(v) = self.answers.get(x) {
            return Ok(*v);
        }
        let v = match session.ask(Query::Mem(x.clone()))? {
            Answer::Yes => true,
            Answer::No => false,
            other => return Err(Error::ProtocolViolation(format!("{other} is not a Mem answer"))),
        };
        self.answers.insert(x.clone(), v);
        Ok(v)
    }
}

fn invalid_positive(p: &Point) -> Error {
    Error::InvalidPositiveExample(p.to_string())
}

/// Feeds a sublearner, reading its inconsistency as a bad positive example.
fn feed(run: &mut SubRun, answer: Answer, p: &Point) -> Result<()> {
    run.feed(answer).map_err(|e| match e {
        Error::Inconsistent(_) => invalid_positive(p),
        e => e,
    })
}

/// Learns a product from EQ or Sub queries, plus Mem and one positive example `p`.
pub fn learn_product_cex_mem_pos(
    subs: &[SublearnerSpec],
    oracle: &mut dyn Oracle,
    p: &Point,
    mode: QueryKind,
    budget: u64,
) -> Result<SessionResult> {
    let mut session = Session::new(oracle, budget);
    let (h, t) = learn_product_cex_mem_pos_in(subs, &mut session, p, mode)?;
    Ok(session.finish(h, t))
}

pub fn learn_product_cex_mem_pos_in(
    subs: &[SublearnerSpec],
    session: &mut Session<'_>,
    p: &Point,
    mode: QueryKind,
) -> Result<Learned> {
    if !matches!(mode, QueryKind::Eq | QueryKind::Sub) {
        return Err(Error::UnsupportedQuery(format!("{mode} mode with Mem and one positive")));
    }
    check_kinds(subs, &[mode], "the counterexample product learner")?;
    let class = product_class(subs);
    class.check_point(p)?;
    let k = subs.len();
    let ps = coords(p, k)?.to_vec();
    let mut runs = subs.iter().map(SubRun::start).collect::<Result<Vec<_>>>()?;
    let mut cache = MemCache::default();
    let mut verified = false;
    while !runs.iter().all(SubRun::is_done) {
        let parts = currents(&runs)?;
        let s = ConceptDesc::Product(parts.clone());
        let query = Query::with_concept(mode, s.clone()).expect("concept query");
        match session.ask(query)? {
            Answer::Yes if mode == QueryKind::Eq => return finish(&class, s, runs, p),
            Answer::Yes => {
                // Sub(∏S) = Yes only says something about the empty parts
                // when the product is empty.
                let empty: Vec<bool> =
                    subs.iter().zip(&parts).map(|(sp, c)| part_is_empty(&sp.class, c)).collect();
                let any_empty = empty.iter().any(|e| *e);
                for (r, e) in runs.iter_mut().zip(&empty) {
                    if !r.is_done() && (!any_empty || *e) {
                        feed(r, Answer::Yes, p)?;
                    }
                }
            }
            Answer::Counterexample(x) => {
                let xs = coords(&x, k)?.to_vec();
                if contains(&class, &s, &x)? {
                    // Negative: blame dimensions by substituting into p.
                    let suspects: Vec<usize> =
                        (0..k).filter(|i| !runs[*i].is_done() && xs[*i] != ps[*i]).collect();
                    let blamed = match suspects.as_slice() {
                        [] => Vec::new(),
                        [only] => vec![*only],
                        _ => {
                            if !verified {
                                if !cache.ask(session, p)? {
                                    return Err(invalid_positive(p));
                                }
                                verified = true;
                            }
                            let mut blamed = Vec::new();
                            for i in suspects {
                                let probe = p.substituted(i, xs[i].clone()).expect("arity checked");
                                if !cache.ask(session, &probe)? {
                                    blamed.push(i);
                                }
                            }
                            blamed
                        }
                    };
                    if blamed.is_empty() {
                        return Err(Error::ProtocolViolation(format!(
                            "negative counterexample {x} cannot be attributed"
                        )));
                    }
                    for i in blamed {
                        feed(&mut runs[i], Answer::Counterexample(xs[i].clone()), p)?;
                    }
                } else {
                    if mode == QueryKind::Sub {
                        return Err(Error::ProtocolViolation(format!(
                            "Sub counterexample {x} lies outside the query"
                        )));
                    }
                    for i in 0..k {
                        if contains(&subs[i].class, &parts[i], &xs[i])? {
                            continue;
                        }
                        if runs[i].is_done() {
                            return Err(Error::ProtocolViolation(format!(
                                "positive counterexample {x} blames finished dimension {i}"
                            )));
                        }
                        feed(&mut runs[i], Answer::Counterexample(xs[i].clone()), p)?;
                    }
                }
            }
            other => {
                return Err(Error::ProtocolViolation(format!("{other} is not a {mode} answer")))
            }
        }
    }
    let h = ConceptDesc::Product(hypotheses(&runs));
    finish(&class, h, runs, p)
}

fn finish(
    class: &crate::concepts::ClassId,
    h: ConceptDesc,
    runs: Vec<SubRun>,
    p: &Point,
) -> Result<Learned> {
    if !contains(class, &h, p)? {
        return Err(invalid_positive(p));
    }
    Ok((h, transcripts(runs)))
}

/// Learns a product from Mem queries and one positive example `p`.
pub fn learn_product_mem_pos(
    subs: &[SublearnerSpec],
    oracle: &mut dyn Oracle,
    p: &Point,
    budget: u64,
) -> Result<SessionResult> {
    let mut session = Session::new(oracle, budget);
    let (h, t) = learn_product_mem_pos_in(subs, &mut session, p)?;
    Ok(session.finish(h, t))
}

pub fn learn_product_mem_pos_in(
    subs: &[SublearnerSpec],
    session: &mut Session<'_>,
    p: &Point,
) -> Result<Learned> {
    mem_pos(subs, session, p, &mut MemCache::default())
}

fn mem_pos(
    subs: &[SublearnerSpec],
    session: &mut Session<'_>,
    p: &Point,
    cache: &mut MemCache,
) -> Result<Learned> {
    check_kinds(subs, &[QueryKind::Mem], "the membership product learner")?;
    let class = product_class(subs);
    class.check_point(p)?;
    let k = subs.len();
    coords(p, k)?;
    let mut runs = Vec::with_capacity(k);
    let (mut asked, mut saw_yes) = (false, false);
    for (i, spec) in subs.iter().enumerate() {
        let mut run = SubRun::start(spec)?;
        while let Some(q) = run.pending().cloned() {
            let Query::Mem(m) = q else {
                return Err(Error::ProtocolViolation(format!("Mem sublearner asked {q}")));
            };
            let probe = p.substituted(i, m).expect("arity checked");
            let v = cache.ask(session, &probe)?;
            asked = true;
            saw_yes |= v;
            feed(&mut run, Answer::from_bool(v), p)?;
        }
        runs.push(run);
    }
    // A Yes pins every coordinate of p but one, and that one is checked
    // against the learned hypothesis below. With only No answers nothing
    // about p has been confirmed.
    if k >= 2 && asked && !saw_yes && !cache.ask(session, p)? {
        return Err(invalid_positive(p));
    }
    let h = ConceptDesc::Product(hypotheses(&runs));
    finish(&class, h, runs, p)
}

/// Learns a product of classes without the empty concept from Mem alone.
pub fn learn_product_mem_only(
    subs: &[SublearnerSpec],
    oracle: &mut dyn Oracle,
    budget: u64,
) -> Result<SessionResult> {
    let mut session = Session::new(oracle, budget);
    let (h, t) = learn_product_mem_only_in(subs, &mut session)?;
    Ok(session.finish(h, t))
}

pub fn learn_product_mem_only_in(
    subs: &[SublearnerSpec],
    session: &mut Session<'_>,
) -> Result<Learned> {
    check_kinds(subs, &[QueryKind::Mem], "the membership-only product learner")?;
    if let Some(s) = subs.iter().find(|s| s.class.contains_empty()) {
        return Err(Error::EmptyConceptClass(s.class.to_string()));
    }
    let mut sequences = Vec::with_capacity(subs.len());
    let mut pools: Vec<BTreeSet<Point>> = Vec::with_capacity(subs.len());
    for spec in subs {
        let cap = usize::try_from(spec.class.universe_size()).unwrap_or(usize::MAX);
        let run = all_negative_run(spec, cap)?;
        pools.push(run.outcome.map(|(_, n)| n).into_iter().collect());
        sequences.push(run.queries);
    }
    let longest = sequences.iter().map(Vec::len).max().unwrap_or(0);
    let mut cache = MemCache::default();
    for round in 0.. {
        for (pool, seq) in pools.iter_mut().zip(&sequences) {
            if let Some(x) = seq.get(round) {
                pool.insert(x.clone());
            }
        }
        let lists: Vec<Vec<Point>> = pools.iter().map(|s| s.iter().cloned().collect()).collect();
        for coords in cartesian(&lists) {
            let x = Point::Vector(coords);
            if cache.answers.contains_key(&x) {
                continue;
            }
            if cache.ask(session, &x)? {
                return mem_pos(subs, session, &x, &mut cache);
            }
        }
        if round + 1 >= longest {
            break;
        }
    }
    Err(Error::NoConsistentHypothesis)
}
