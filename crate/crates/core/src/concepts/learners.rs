//! Reference sublearners for the shipped classes.
//!
//! Query counts of the specialised learners do not depend on which honest
//! counterexample they are shown, or are largest under the least-element
//! policy, so a combinator that hands them other valid counterexamples never
//! makes them slower than their standalone runs.

use std::collections::BTreeSet;

use super::{contains, subset_of, witness, ClassId, ConceptDesc, Point};
use crate::composite::prefix::PrefixLearner;
use crate::error::{Error, Result};
use crate::protocol::{
    check_answer, run_session, Answer, HonestOracle, Learner, LearnerEvent, Query, QueryKind,
    SessionResult,
};

/// A resumable learner body; [`Machine`] adds the sticky `Done`.
pub(crate) trait Step {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent>;
}

pub(crate) struct Machine<S> {
    inner: S,
    done: Option<ConceptDesc>,
}

impl<S: Step> Machine<S> {
    pub(crate) fn new(inner: S) -> Self {
        Machine { inner, done: None }
    }
}

impl<S: Step> Learner for Machine<S> {
    fn resume(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        if let Some(h) = &self.done {
            return Ok(LearnerEvent::Done(h.clone()));
        }
        let ev = self.inner.step(answer)?;
        if let LearnerEvent::Done(h) = &ev {
            self.done = Some(h.clone());
        }
        Ok(ev)
    }
}

fn unexpected(answer: Option<&Answer>, what: &str) -> Error {
    match answer {
        Some(a) => Error::ProtocolViolation(format!("unexpected answer {a} to {what}")),
        None => Error::ProtocolViolation(format!("missing answer to {what}")),
    }
}

fn int(p: &Point) -> Result<i64> {
    match p {
        Point::Int(v) => Ok(*v),
        other => Err(Error::ProtocolViolation(format!("expected an integer point, got {other}"))),
    }
}

/// `Some(None)` for Yes, `Some(Some(x))` for a counterexample.
fn verdict(answer: Option<&Answer>, what: &str) -> Result<Option<Point>> {
    match answer {
        Some(Answer::Yes) => Ok(None),
        Some(Answer::Counterexample(x)) => Ok(Some(x.clone())),
        other => Err(unexpected(other, what)),
    }
}

fn yes_no(answer: Option<&Answer>, what: &str) -> Result<bool> {
    match answer {
        Some(Answer::Yes) => Ok(true),
        Some(Answer::No) => Ok(false),
        other => Err(unexpected(other, what)),
    }
}

fn need(q: Query) -> Result<LearnerEvent> {
    Ok(LearnerEvent::Need(q))
}

fn done(c: ConceptDesc) -> Result<LearnerEvent> {
    Ok(LearnerEvent::Done(c))
}

/// Scans `{0}, {1}, ...` with Mem, Sub or EQ; `{m}` is inferred.
struct SingletonScan {
    m: u32,
    kind: QueryKind,
    j: u32,
}

impl SingletonScan {
    fn query(&self) -> Result<LearnerEvent> {
        let j = self.j;
        need(match self.kind {
            QueryKind::Mem => Query::Mem(Point::Int(i64::from(j))),
            QueryKind::Sub => Query::Sub(ConceptDesc::Singleton(j)),
            _ => Query::Eq(ConceptDesc::Singleton(j)),
        })
    }

    fn advance(&mut self) -> Result<LearnerEvent> {
        self.j += 1;
        if self.j == self.m {
            done(ConceptDesc::Singleton(self.m))
        } else {
            self.query()
        }
    }
}

impl Step for SingletonScan {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        let Some(a) = answer else {
            return if self.m == 0 { done(ConceptDesc::Singleton(0)) } else { self.query() };
        };
        let j = self.j;
        match (self.kind, &a) {
            (_, Answer::Yes) => done(ConceptDesc::Singleton(j)),
            (QueryKind::Mem, Answer::No) | (QueryKind::Sub, Answer::Counterexample(_)) => {
                self.advance()
            }
            (QueryKind::Eq, Answer::Counterexample(x)) => {
                let t = int(x)?;
                if t == i64::from(j) {
                    self.advance()
                } else {
                    u32::try_from(t)
                        .ok()
                        .filter(|t| *t <= self.m)
                        .map(|t| LearnerEvent::Done(ConceptDesc::Singleton(t)))
                        .ok_or_else(|| unexpected(Some(&a), "singleton EQ"))
                }
            }
            _ => Err(unexpected(Some(&a), "singleton scan")),
        }
    }
}

/// One Sup or Pos query names the singleton.
struct SingletonOneShot {
    m: u32,
    kind: QueryKind,
}

impl Step for SingletonOneShot {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        let single = |x: &Point| -> Result<LearnerEvent> {
            let t = int(x)?;
            u32::try_from(t)
                .ok()
                .filter(|t| *t <= self.m)
                .map(|t| LearnerEvent::Done(ConceptDesc::Singleton(t)))
                .ok_or_else(|| Error::ProtocolViolation(format!("{x} is not a singleton value")))
        };
        match (answer, self.kind) {
            (None, _) if self.m == 0 => done(ConceptDesc::Singleton(0)),
            (None, QueryKind::Sup) => need(Query::Sup(ConceptDesc::Singleton(0))),
            (None, QueryKind::OnePos) => need(Query::OnePos),
            (None, _) => need(Query::Pos),
            (Some(Answer::Yes), QueryKind::Sup) => done(ConceptDesc::Singleton(0)),
            (Some(Answer::Counterexample(x)), QueryKind::Sup) => single(&x),
            (Some(Answer::Positive(x)), _) => single(&x),
            (other, _) => Err(unexpected(other.as_ref(), "singleton one-shot")),
        }
    }
}

/// Finds the least member by scanning, then extends it while answers are Yes.
struct IntervalMem {
    u: i64,
    x: i64,
    lo: Option<i64>,
}

impl Step for IntervalMem {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        let Some(a) = answer else {
            return need(Query::Mem(Point::Int(0)));
        };
        let last = self.x == self.u - 1;
        match (self.lo, yes_no(Some(&a), "interval Mem")?) {
            (None, true) | (Some(_), true) if last => {
                done(ConceptDesc::interval(self.lo.unwrap_or(self.x), self.x))
            }
            (None, true) => {
                self.lo = Some(self.x);
                self.x += 1;
                need(Query::Mem(Point::Int(self.x)))
            }
            (None, false) if last => Err(Error::Inconsistent(
                "every point answered negative but intervals are nonempty".into(),
            )),
            (None, false) | (Some(_), true) => {
                self.x += 1;
                need(Query::Mem(Point::Int(self.x)))
            }
            (Some(lo), false) => done(ConceptDesc::interval(lo, self.x - 1)),
        }
    }
}

enum SubPhase {
    Lo(i64),
    Hi { lo: i64, l: i64, h: i64, mid: i64 },
}

/// Finds `lo` with `Sub([x,x])`, then binary-searches `hi` with `Sub([lo,mid])`.
struct IntervalSub {
    u: i64,
    phase: SubPhase,
}

impl IntervalSub {
    fn search_hi(&mut self, lo: i64, l: i64, h: i64) -> Result<LearnerEvent> {
        if l == h {
            return done(ConceptDesc::interval(lo, l));
        }
        let mid = (l + h + 1) / 2;
        self.phase = SubPhase::Hi { lo, l, h, mid };
        need(Query::Sub(ConceptDesc::interval(lo, mid)))
    }
}

impl Step for IntervalSub {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        let Some(a) = answer else {
            if self.u == 1 {
                return done(ConceptDesc::interval(0, 0));
            }
            self.phase = SubPhase::Lo(0);
            return need(Query::Sub(ConceptDesc::interval(0, 0)));
        };
        let inside = verdict(Some(&a), "interval Sub")?.is_none();
        match self.phase {
            SubPhase::Lo(x) if inside => self.search_hi(x, x, self.u - 1),
            SubPhase::Lo(x) if x + 1 == self.u - 1 => done(ConceptDesc::interval(x + 1, x + 1)),
            SubPhase::Lo(x) => {
                self.phase = SubPhase::Lo(x + 1);
                need(Query::Sub(ConceptDesc::interval(x + 1, x + 1)))
            }
            SubPhase::Hi { lo, l, h, mid } => {
                if inside {
                    self.search_hi(lo, mid, h)
                } else {
                    self.search_hi(lo, l, mid - 1)
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum SupPhase {
    Hi { l: i64, h: i64, mid: i64 },
    Lo { hi: i64, l: i64, h: i64, mid: i64 },
}

/// Binary-searches `hi` with `Sup([0,mid])`, then `lo` with `Sup([mid,hi])`.
struct IntervalSup {
    u: i64,
    phase: SupPhase,
}

impl IntervalSup {
    fn search_hi(&mut self, l: i64, h: i64) -> Result<LearnerEvent> {
        if l == h {
            return self.search_lo(l, 0, l);
        }
        let mid = (l + h) / 2;
        self.phase = SupPhase::Hi { l, h, mid };
        need(Query::Sup(ConceptDesc::interval(0, mid)))
    }

    fn search_lo(&mut self, hi: i64, l: i64, h: i64) -> Result<LearnerEvent> {
        if l == h {
            return done(ConceptDesc::interval(l, hi));
        }
        let mid = (l + h + 1) / 2;
        self.phase = SupPhase::Lo { hi, l, h, mid };
        need(Query::Sup(ConceptDesc::interval(mid, hi)))
    }
}

impl Step for IntervalSup {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        let Some(a) = answer else {
            return self.search_hi(0, self.u - 1);
        };
        let covered = verdict(Some(&a), "interval Sup")?.is_none();
        match self.phase {
            SupPhase::Hi { l, h, mid } => {
                if covered {
                    self.search_hi(l, mid)
                } else {
                    self.search_hi(mid + 1, h)
                }
            }
            SupPhase::Lo { hi, l, h, mid } => {
                if covered {
                    self.search_lo(hi, mid, h)
                } else {
                    self.search_lo(hi, l, mid - 1)
                }
            }
        }
    }
}

/// Scans `EQ([x,x])` until a member is revealed, then grows a hull of known
/// members by one point per counterexample.
struct IntervalEq {
    u: i64,
    scan: i64,
    hull: Option<(i64, i64)>,
}

impl Step for IntervalEq {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        let Some(a) = answer else {
            return need(Query::Eq(ConceptDesc::interval(0, 0)));
        };
        let cex = verdict(Some(&a), "interval EQ")?;
        let (lo, hi) = match (self.hull, cex) {
            (None, None) => return done(ConceptDesc::interval(self.scan, self.scan)),
            (Some((lo, hi)), None) => return done(ConceptDesc::interval(lo, hi)),
            (None, Some(x)) => {
                let y = int(&x)?;
                if y != self.scan {
                    (y, y)
                } else if self.scan == self.u - 1 {
                    return Err(Error::Inconsistent(
                        "every point was excluded but intervals are nonempty".into(),
                    ));
                } else {
                    self.scan += 1;
                    return need(Query::Eq(ConceptDesc::interval(self.scan, self.scan)));
                }
            }
            (Some((lo, hi)), Some(x)) => {
                let z = int(&x)?;
                if z < lo {
                    (lo - 1, hi)
                } else if z > hi {
                    (lo, hi + 1)
                } else {
                    return Err(Error::Inconsistent(format!(
                        "counterexample {z} lies inside the known members [{lo},{hi}]"
                    )));
                }
            }
        };
        self.hull = Some((lo, hi));
        need(Query::Eq(ConceptDesc::interval(lo, hi)))
    }
}

/// Asks about every point of `[0,u)` with Mem or `Sub({x})`.
struct FiniteSetScan {
    u: i64,
    kind: QueryKind,
    x: i64,
    set: BTreeSet<Point>,
}

impl FiniteSetScan {
    fn query(&self) -> Result<LearnerEvent> {
        let x = Point::Int(self.x);
        need(match self.kind {
            QueryKind::Mem => Query::Mem(x),
            _ => Query::Sub(ConceptDesc::set([x])),
        })
    }
}

impl Step for FiniteSetScan {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        if let Some(a) = answer {
            let member = match self.kind {
                QueryKind::Mem => yes_no(Some(&a), "set Mem")?,
                _ => verdict(Some(&a), "set Sub")?.is_none(),
            };
            if member {
                self.set.insert(Point::Int(self.x));
            }
            self.x += 1;
        }
        if self.x == self.u {
            done(ConceptDesc::FiniteSet(std::mem::take(&mut self.set)))
        } else {
            self.query()
        }
    }
}

/// Grows a set of known members from EQ/Sup counterexamples or Pos answers.
struct FiniteSetGrow {
    kind: QueryKind,
    set: BTreeSet<Point>,
}

impl FiniteSetGrow {
    fn query(&self) -> Result<LearnerEvent> {
        let c = ConceptDesc::FiniteSet(self.set.clone());
        need(match self.kind {
            QueryKind::Eq => Query::Eq(c),
            QueryKind::Sup => Query::Sup(c),
            _ => Query::Pos,
        })
    }
}

impl Step for FiniteSetGrow {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        match answer {
            None => self.query(),
            Some(Answer::Yes | Answer::NoSuchExample) => {
                done(ConceptDesc::FiniteSet(std::mem::take(&mut self.set)))
            }
            Some(Answer::Counterexample(x) | Answer::Positive(x)) => {
                if !self.set.insert(x.clone()) {
                    return Err(Error::Inconsistent(format!("{x} was already known")));
                }
                self.query()
            }
            other => Err(unexpected(other.as_ref(), "set growth")),
        }
    }
}

/// Decides a two-concept class with a single query.
struct Decide {
    query: Option<Query>,
    on_yes: ConceptDesc,
    otherwise: ConceptDesc,
}

impl Step for Decide {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        match answer {
            None => need(self.query.take().expect("decision asked once")),
            Some(Answer::Yes) => done(self.on_yes.clone()),
            Some(Answer::No | Answer::Counterexample(_)) => done(self.otherwise.clone()),
            other => Err(unexpected(other.as_ref(), "decision query")),
        }
    }
}

/// Version-space elimination over an enumerated class.
///
/// Mem asks the least point the survivors disagree on; Sub asks a maximal
/// survivor, Sup a minimal one, EQ the first; Pos just asks Pos.
pub struct EliminationLearner {
    class: ClassId,
    kind: QueryKind,
    points: Vec<Point>,
    survivors: Vec<ConceptDesc>,
    issued: BTreeSet<Point>,
    pending: Option<Query>,
}

impl EliminationLearner {
    pub fn new(class: ClassId, kind: QueryKind) -> Result<Self> {
        if !matches!(
            kind,
            QueryKind::Mem | QueryKind::Sub | QueryKind::Sup | QueryKind::Eq | QueryKind::Pos
        ) {
            return Err(Error::UnsupportedQuery(format!("elimination with {kind}")));
        }
        let points = if kind == QueryKind::Mem { class.points()? } else { Vec::new() };
        let survivors = class.concepts()?;
        Ok(EliminationLearner {
            class,
            kind,
            points,
            survivors,
            issued: BTreeSet::new(),
            pending: None,
        })
    }

    pub fn survivors(&self) -> &[ConceptDesc] {
        &self.survivors
    }

    fn extremal(&self, bigger: bool) -> Result<ConceptDesc> {
        for c in &self.survivors {
            let mut dominated = false;
            for d in &self.survivors {
                if c == d {
                    continue;
                }
                let (small, big) = if bigger { (c, d) } else { (d, c) };
                if subset_of(&self.class, small, big)? && !subset_of(&self.class, big, small)? {
                    dominated = true;
                    break;
                }
            }
            if !dominated {
                return Ok(c.clone());
            }
        }
        Ok(self.survivors[0].clone())
    }

    fn next_query(&self) -> Result<Option<Query>> {
        Ok(Some(match self.kind {
            QueryKind::Mem => {
                let first = &self.survivors[0];
                let mut split = None;
                'points: for p in &self.points {
                    let v = contains(&self.class, first, p)?;
                    for c in &self.survivors[1..] {
                        if contains(&self.class, c, p)? != v {
                            split = Some(p.clone());
                            break 'points;
                        }
                    }
                }
                match split {
                    Some(p) => Query::Mem(p),
                    None => return Ok(None),
                }
            }
            QueryKind::Sub => Query::Sub(self.extremal(true)?),
            QueryKind::Sup => Query::Sup(self.extremal(false)?),
            QueryKind::Eq => Query::Eq(self.survivors[0].clone()),
            _ => Query::Pos,
        }))
    }
}

impl Step for EliminationLearner {
    fn step(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        if let Some(q) = self.pending.take() {
            let a = answer.ok_or_else(|| unexpected(None, "elimination query"))?;
            let mut kept = Vec::with_capacity(self.survivors.len());
            for c in self.survivors.drain(..) {
                if check_answer(&self.class, &c, &q, &a, &self.issued)? {
                    kept.push(c);
                }
            }
            self.survivors = kept;
            if let (Query::Pos, Answer::Positive(x)) = (&q, &a) {
                self.issued.insert(x.clone());
            }
        }
        match self.survivors.len() {
            0 => Err(Error::Inconsistent(format!("no concept of {} fits the answers", self.class))),
            1 => done(self.survivors[0].clone()),
            _ => match self.next_query()? {
                Some(q) => {
                    self.pending = Some(q.clone());
                    need(q)
                }
                None => done(self.survivors[0].clone()),
            },
        }
    }
}

/// The elimination learner for `class` with queries of `kind`.
pub fn elimination_learner(class: ClassId, kind: QueryKind) -> Result<Box<dyn Learner>> {
    Ok(Box::new(Machine::new(EliminationLearner::new(class, kind)?)))
}

/// A component class together with the query kind its reference learner uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublearnerSpec {
    pub class: ClassId,
    pub kind: QueryKind,
}

impl SublearnerSpec {
    pub fn new(class: ClassId, kind: QueryKind) -> Self {
        SublearnerSpec { class, kind }
    }

    /// A fresh instance of the reference learner.
    pub fn spawn(&self) -> Result<Box<dyn Learner>> {
        use QueryKind as K;
        let boxed = |s: Box<dyn Learner>| -> Result<Box<dyn Learner>> { Ok(s) };
        match (&self.class, self.kind) {
            (ClassId::Singletons { m }, K::Mem | K::Sub | K::Eq) => {
                boxed(Box::new(Machine::new(SingletonScan { m: *m, kind: self.kind, j: 0 })))
            }
            (ClassId::Singletons { m }, K::Sup | K::Pos | K::OnePos) => {
                boxed(Box::new(Machine::new(SingletonOneShot { m: *m, kind: self.kind })))
            }
            (ClassId::Intervals { u }, K::Mem) => {
                boxed(Box::new(Machine::new(IntervalMem { u: i64::from(*u), x: 0, lo: None })))
            }
            (ClassId::Intervals { u }, K::Sub) => boxed(Box::new(Machine::new(IntervalSub {
                u: i64::from(*u),
                phase: SubPhase::Lo(0),
            }))),
            (ClassId::Intervals { u }, K::Sup) => boxed(Box::new(Machine::new(IntervalSup {
                u: i64::from(*u),
                phase: SupPhase::Hi { l: 0, h: 0, mid: 0 },
            }))),
            (ClassId::Intervals { u }, K::Eq) => boxed(Box::new(Machine::new(IntervalEq {
                u: i64::from(*u),
                scan: 0,
                hull: None,
            }))),
            (ClassId::FiniteSets { u }, K::Mem | K::Sub) => {
                boxed(Box::new(Machine::new(FiniteSetScan {
                    u: i64::from(*u),
                    kind: self.kind,
                    x: 0,
                    set: BTreeSet::new(),
                })))
            }
            (ClassId::FiniteSets { .. }, K::Eq | K::Sup | K::Pos) => boxed(Box::new(Machine::new(
                FiniteSetGrow { kind: self.kind, set: BTreeSet::new() },
            ))),
            (ClassId::PairLeft, K::Mem | K::Sub | K::Eq | K::Sup) => {
                let a = ConceptDesc::set([ClassId::a()]);
                let ab = ConceptDesc::set([ClassId::a(), ClassId::b()]);
                let d = match self.kind {
                    K::Mem => Decide { query: Some(Query::Mem(ClassId::b())), on_yes: ab, otherwise: a },
                    K::Sub => Decide { query: Some(Query::Sub(ab.clone())), on_yes: ab, otherwise: a },
                    _ => Decide {
                        query: Query::with_concept(self.kind, a.clone()),
                        on_yes: a,
                        otherwise: ab,
                    },
                };
                boxed(Box::new(Machine::new(d)))
            }
            (ClassId::PairRight { u }, K::Mem | K::Sub | K::Eq | K::Sup) => {
                let u = i64::from(*u);
                let nat = ConceptDesc::interval(0, u - 1);
                let neg = ConceptDesc::interval(-u, -1);
                let query = match self.kind {
                    K::Mem => Some(Query::Mem(Point::Int(0))),
                    kind => Query::with_concept(kind, nat.clone()),
                };
                boxed(Box::new(Machine::new(Decide { query, on_yes: nat, otherwise: neg })))
            }
            (ClassId::Prefix { max_len, .. }, K::Eq | K::Sub) => {
                boxed(Box::new(PrefixLearner::new(self.kind, *max_len)?))
            }
            (_, K::Mem | K::Sub | K::Eq | K::Sup | K::Pos) => {
                elimination_learner(self.class.clone(), self.kind)
            }
            (class, kind) => Err(Error::UnsupportedQuery(format!(
                "no reference {kind} learner for {class}"
            ))),
        }
    }

    /// Runs the reference learner alone against the honest oracle for `target`.
    pub fn standalone(&self, target: &ConceptDesc) -> Result<SessionResult> {
        let mut oracle = HonestOracle::new(self.class.clone(), target.clone())?;
        let mut learner = self.spawn()?;
        let budget = self.class.universe_size().saturating_mul(4).saturating_add(64);
        run_session(&mut learner, &mut oracle, budget)
    }

    /// The number of queries of the reference learner on `target`.
    pub fn standalone_count(&self, target: &ConceptDesc) -> Result<u64> {
        Ok(self.standalone(target)?.stats.total)
    }
}

/// A run of a membership learner in which every answer is No.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeRun {
    pub queries: Vec<Point>,
    /// The final hypothesis and its least member, when the run ends with a
    /// nonempty hypothesis.
    pub outcome: Option<(ConceptDesc, Point)>,
}

/// Drives the learner of `spec` with No answers for at most `cap` queries.
pub fn all_negative_run(spec: &SublearnerSpec, cap: usize) -> Result<NegativeRun> {
    if spec.kind != QueryKind::Mem {
        return Err(Error::UnsupportedQuery(format!(
            "all-negative runs need a Mem learner, got {}",
            spec.kind
        )));
    }
    let mut learner = spec.spawn()?;
    let mut queries = Vec::new();
    let mut answer = None;
    loop {
        match learner.resume(answer.take()) {
            Ok(LearnerEvent::Done(h)) => {
                let outcome = witness(&spec.class, &h).map(|n| (h, n));
                return Ok(NegativeRun { queries, outcome });
            }
            Ok(LearnerEvent::Need(Query::Mem(x))) if queries.len() < cap => {
                queries.push(x);
                answer = Some(Answer::No);
            }
            Ok(LearnerEvent::Need(Query::Mem(_))) | Err(Error::Inconsistent(_)) => {
                return Ok(NegativeRun { queries, outcome: None })
            }
            Ok(LearnerEvent::Need(q)) => {
                return Err(Error::ProtocolViolation(format!("Mem learner asked {q}")))
            }
            Err(e) => return Err(e),
        }
    }
}

/// `(N, n)`: the all-negative hypothesis and its least member, if any.
pub fn all_negative_profile(spec: &SublearnerSpec) -> Option<(ConceptDesc, Point)> {
    let cap = usize::try_from(spec.class.universe_size()).unwrap_or(usize::MAX);
    all_negative_run(spec, cap).ok()?.outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::equivalent;
    use crate::protocol::{consistent_with_transcript, CexPolicy, Oracle};

    fn classes() -> Vec<ClassId> {
        vec![
            ClassId::Singletons { m: 0 },
            ClassId::Singletons { m: 4 },
            ClassId::Intervals { u: 1 },
            ClassId::Intervals { u: 2 },
            ClassId::Intervals { u: 9 },
            ClassId::FiniteSets { u: 3 },
            ClassId::PairLeft,
            ClassId::PairRight { u: 3 },
            ClassId::Prefix { u: 3, max_len: 2 },
            ClassId::power(ClassId::Singletons { m: 1 }, 2),
        ]
    }

    const KINDS: [QueryKind; 5] =
        [QueryKind::Mem, QueryKind::Sub, QueryKind::Sup, QueryKind::Eq, QueryKind::Pos];

    fn run_with(
        spec: &SublearnerSpec,
        target: &ConceptDesc,
        policy: CexPolicy,
    ) -> Result<SessionResult> {
        let mut oracle = HonestOracle::with_policy(spec.class.clone(), target.clone(), policy)?;
        run_session(&mut spec.spawn()?, &mut oracle, 10_000)
    }

    #[test]
    fn every_reference_learner_is_exact() {
        for class in classes() {
            for kind in KINDS {
                let spec = SublearnerSpec::new(class.clone(), kind);
                for target in class.concepts().unwrap() {
                    let least = spec.standalone(&target).unwrap();
                    assert!(
                        equivalent(&class, &least.hypothesis, &target).unwrap(),
                        "{kind} on {class}: {target} vs {}",
                        least.hypothesis
                    );
                    for policy in [CexPolicy::PreferPositive, CexPolicy::PreferNegative] {
                        let r = run_with(&spec, &target, policy).unwrap();
                        assert!(equivalent(&class, &r.hypothesis, &target).unwrap());
                        if kind != QueryKind::Pos && !matches!(class, ClassId::Product(_)) {
                            assert!(
                                r.stats.total <= least.stats.total,
                                "{kind} on {class}, {target}: {policy:?} took longer"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn singleton_mem_trace() {
        let spec = SublearnerSpec::new(ClassId::Singletons { m: 4 }, QueryKind::Mem);
        let r = spec.standalone(&ConceptDesc::Singleton(2)).unwrap();
        assert_eq!(r.hypothesis, ConceptDesc::Singleton(2));
        let asked: Vec<_> = r.transcript.iter().map(|(q, _)| q.clone()).collect();
        assert_eq!(asked, (0..3).map(|x| Query::Mem(Point::Int(x))).collect::<Vec<_>>());
    }

    #[test]
    fn repeats_done() {
        let spec = SublearnerSpec::new(ClassId::PairLeft, QueryKind::Mem);
        let mut l = spec.spawn().unwrap();
        assert_eq!(l.resume(None).unwrap(), LearnerEvent::Need(Query::Mem(ClassId::b())));
        let d = l.resume(Some(Answer::No)).unwrap();
        assert_eq!(d, LearnerEvent::Done(ConceptDesc::set([ClassId::a()])));
        assert_eq!(l.resume(None).unwrap(), d);
    }

    #[test]
    fn interval_counts() {
        let ints = ClassId::Intervals { u: 16 };
        let t = ConceptDesc::interval(3, 5);
        let count = |k| SublearnerSpec::new(ints.clone(), k).standalone_count(&t).unwrap();
        assert_eq!(count(QueryKind::Mem), 7);
        assert_eq!(count(QueryKind::Eq), 3 + 3 + 1);
        assert!(count(QueryKind::Sup) <= 8);
        assert!(count(QueryKind::Sub) <= 4 + 4);
    }

    #[test]
    fn negative_profiles() {
        let sing = SublearnerSpec::new(ClassId::Singletons { m: 3 }, QueryKind::Mem);
        let run = all_negative_run(&sing, 10).unwrap();
        assert_eq!(run.queries, vec![Point::Int(0), Point::Int(1), Point::Int(2)]);
        assert_eq!(all_negative_profile(&sing), Some((ConceptDesc::Singleton(3), Point::Int(3))));
        let ints = SublearnerSpec::new(ClassId::Intervals { u: 8 }, QueryKind::Mem);
        let run = all_negative_run(&ints, 100).unwrap();
        assert_eq!(run.queries.len(), 8);
        assert_eq!(run.outcome, None);
        let right = SublearnerSpec::new(ClassId::PairRight { u: 4 }, QueryKind::Mem);
        assert_eq!(
            all_negative_profile(&right),
            Some((ConceptDesc::interval(-4, -1), Point::Int(-4)))
        );
        let sets = SublearnerSpec::new(ClassId::FiniteSets { u: 3 }, QueryKind::Mem);
        assert_eq!(all_negative_profile(&sets), None);
        let sup = SublearnerSpec::new(ClassId::Intervals { u: 8 }, QueryKind::Sup);
        assert!(all_negative_run(&sup, 10).is_err());
    }

    #[test]
    fn elimination_survivors_stay_consistent() {
        let class = ClassId::power(ClassId::Intervals { u: 3 }, 2);
        let target = class.concepts().unwrap()[7].clone();
        let mut oracle = HonestOracle::new(class.clone(), target.clone()).unwrap();
        let mut l = EliminationLearner::new(class.clone(), QueryKind::Mem).unwrap();
        let mut transcript = Vec::new();
        let mut answer = None;
        loop {
            match l.step(answer.take()).unwrap() {
                LearnerEvent::Done(h) => {
                    assert_eq!(h, target);
                    break;
                }
                LearnerEvent::Need(q) => {
                    let a = oracle.answer(&q).unwrap();
                    transcript.push((q, a.clone()));
                    answer = Some(a);
                }
            }
        }
        for c in l.survivors() {
            assert!(consistent_with_transcript(&class, c, &transcript).unwrap());
        }
    }
}
