use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use super::FreshValueSource;
use crate::concepts::{ClassId, ConceptDesc, Point, Word};
use crate::error::{Error, Result};
use crate::protocol::{
    consistent_with_transcript, Answer, Learner, LearnerEvent, Oracle, Query, QueryKind, Transcript,
};

/// The words `(s_1, ..., s_k)` of a product of prefix concepts.
pub type Words = Vec<Word>;

pub fn word_sum(w: &Words) -> usize {
    w.iter().map(Word::len).sum()
}

fn product(words: &Words) -> ConceptDesc {
    ConceptDesc::Product(words.iter().cloned().map(ConceptDesc::Prefix).collect())
}

fn words_of(c: &ConceptDesc) -> Option<Words> {
    c.parts()?
        .iter()
        .map(|p| match p {
            ConceptDesc::Prefix(w) => Some(w.clone()),
            _ => None,
        })
        .collect()
}

/// What the prefix adversary has answered and which concepts that makes justifiable.
#[derive(Clone, Debug)]
pub struct JustifiabilityLog {
    pub answered: BTreeMap<Words, Point>,
    pub justifiable: BTreeSet<Words>,
    justified: BTreeSet<Words>,
    children: BTreeMap<Words, Vec<(usize, Words)>>,
    root: Words,
}

impl JustifiabilityLog {
    pub fn new(k: usize) -> Self {
        let root = vec![Word::empty(); k];
        JustifiabilityLog {
            answered: BTreeMap::new(),
            justifiable: [root.clone()].into(),
            justified: BTreeSet::new(),
            children: BTreeMap::new(),
            root,
        }
    }

    pub fn was_justifiably_queried(&self, w: &Words) -> bool {
        self.justified.contains(w)
    }

    fn note(&mut self, w: &Words, cex: &Point) {
        if !self.justifiable.contains(w) || !self.justified.insert(w.clone()) {
            return;
        }
        let coords = cex.coords().expect("adversary counterexamples are vectors");
        let mut kids = Vec::with_capacity(w.len());
        for (i, c) in coords.iter().enumerate() {
            let Point::Pair(_, a) = c else { continue };
            let mut child = w.clone();
            child[i] = w[i].extended(*a);
            self.justifiable.insert(child.clone());
            kids.push((i, child));
        }
        self.children.insert(w.clone(), kids);
    }
}

/// Answers Sub and EQ on products of prefix concepts, never with Yes. A new
/// query `prod c(s_i)` gets the counterexample `((s_1,a_1), ..., (s_k,a_k))`
/// with every `a_i` fresh; a repeated one gets its earlier counterexample.
#[derive(Clone, Debug)]
pub struct PrefixAdversary {
    class: ClassId,
    log: JustifiabilityLog,
    fresh: FreshValueSource,
}

impl PrefixAdversary {
    pub fn new(k: usize, u: u32, max_len: usize) -> Self {
        PrefixAdversary {
            class: ClassId::power(ClassId::Prefix { u, max_len }, k),
            log: JustifiabilityLog::new(k),
            fresh: FreshValueSource::new(u),
        }
    }

    pub fn class(&self) -> &ClassId {
        &self.class
    }

    pub fn log(&self) -> &JustifiabilityLog {
        &self.log
    }

    pub fn fresh(&self) -> &FreshValueSource {
        &self.fresh
    }
}

impl Oracle for PrefixAdversary {
    fn answer(&mut self, query: &Query) -> Result<Answer> {
        let c = match query {
            Query::Sub(c) | Query::Eq(c) => c,
            q => {
                return Err(Error::UnsupportedQuery(format!(
                    "the prefix adversary answers Sub and EQ, not {}",
                    q.kind()
                )))
            }
        };
        self.class.check_concept(c)?;
        let words = words_of(c).expect("checked concept");
        let cex = match self.log.answered.get(&words) {
            Some(x) => x.clone(),
            None => {
                self.fresh.observe(words.iter().flat_map(|w| w.symbols().to_vec()));
                let mut coords = Vec::with_capacity(words.len());
                for w in &words {
                    coords.push(Point::Pair(w.clone(), self.fresh.fresh()?));
                }
                let x = Point::Vector(coords);
                self.log.answered.insert(words.clone(), x.clone());
                x
            }
        };
        self.log.note(&words, &cex);
        Ok(Answer::Counterexample(cex))
    }
}

/// The number of justifiable concepts whose word lengths sum to `r`.
pub fn count_justifiable(log: &JustifiabilityLog, r: usize) -> Result<usize> {
    if let Some(w) = log.justifiable.iter().find(|w| word_sum(w) < r && !log.answered.contains_key(*w)) {
        return Err(Error::PreconditionUnmet(format!(
            "justifiable {} below level {r} was never queried",
            render_words(w)
        )));
    }
    Ok(log.justifiable.iter().filter(|w| word_sum(w) == r).count())
}

/// An unqueried justifiable concept with length sum at most `r` that is
/// consistent with every exchange of `transcript`, checked by replay.
pub fn prefix_certificate(
    class: &ClassId,
    log: &JustifiabilityLog,
    transcript: &Transcript,
    r: usize,
) -> Result<Option<ConceptDesc>> {
    for w in &log.justifiable {
        if word_sum(w) > r || log.answered.contains_key(w) {
            continue;
        }
        let c = product(w);
        if consistent_with_transcript(class, &c, transcript)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Queries every justifiable concept with length sum below `levels`, level by
/// level, deriving justifiable concepts from the counterexamples it receives.
pub struct BreadthFirstLearner {
    kind: QueryKind,
    levels: usize,
    queue: VecDeque<Words>,
    frontier: Vec<Words>,
    pending: Option<Words>,
    done: Option<ConceptDesc>,
}

impl BreadthFirstLearner {
    pub fn new(k: usize, kind: QueryKind, levels: usize) -> Self {
        let root = vec![Word::empty(); k];
        let (queue, frontier) =
            if levels == 0 { (VecDeque::new(), vec![root]) } else { ([root].into(), Vec::new()) };
        BreadthFirstLearner { kind, levels, queue, frontier, pending: None, done: None }
    }

    /// Justifiable concepts at length sum `levels` seen so far.
    pub fn frontier(&self) -> &[Words] {
        &self.frontier
    }

    fn finish(&mut self, c: ConceptDesc) -> LearnerEvent {
        self.done = Some(c.clone());
        LearnerEvent::Done(c)
    }
}

impl Learner for BreadthFirstLearner {
    fn resume(&mut self, answer: Option<Answer>) -> Result<LearnerEvent> {
        if let Some(h) = &self.done {
            return Ok(LearnerEvent::Done(h.clone()));
        }
        if let Some(w) = self.pending.take() {
            match answer {
                Some(Answer::Yes) => return Ok(self.finish(product(&w))),
                Some(Answer::Counterexample(x)) => {
                    let coords = x.coords().filter(|c| c.len() == w.len()).ok_or_else(|| {
                        Error::ProtocolViolation(format!("{x} does not match {}", render_words(&w)))
                    })?;
                    for (i, c) in coords.iter().enumerate() {
                        let Point::Pair(t, a) = c else {
                            return Err(Error::ProtocolViolation(format!("{c} is not a prefix point")));
                        };
                        if *t != w[i] {
                            continue;
                        }
                        let mut child = w.clone();
                        child[i] = t.extended(*a);
                        if word_sum(&child) < self.levels {
                            self.queue.push_back(child);
                        } else {
                            self.frontier.push(child);
                        }
                    }
                }
                other => {
                    return Err(Error::ProtocolViolation(format!(
                        "unexpected answer {other:?} to a prefix query"
                    )))
                }
            }
        }
        match self.queue.pop_front() {
            Some(w) => {
                let q = Query::with_concept(self.kind, product(&w)).ok_or_else(|| {
                    Error::UnsupportedQuery(format!("breadth-first learner with {}", self.kind))
                })?;
                self.pending = Some(w);
                Ok(LearnerEvent::Need(q))
            }
            None => {
                let first = self.frontier.first().cloned().unwrap_or_default();
                Ok(self.finish(product(&first)))
            }
        }
    }
}

fn render_word(w: &Word) -> String {
    if w.is_empty() {
        "λ".into()
    } else {
        w.symbols().iter().map(u32::to_string).collect::<Vec<_>>().join("·")
    }
}

fn render_words(w: &Words) -> String {
    let parts: Vec<String> = w.iter().map(|s| format!("c({})", render_word(s))).collect();
    format!("({})", parts.join(","))
}

fn render_point(x: &Point) -> String {
    match x {
        Point::Pair(t, a) => format!("({},{a})", render_word(t)),
        Point::Vector(c) => format!("({})", c.iter().map(render_point).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

/// Indented tree of justifiable queries. Each node shows the query (JQ) and,
/// once asked, its counterexample (CE); each edge shows what the
/// counterexample tells about the target words.
pub fn render_tree(log: &JustifiabilityLog) -> String {
    fn walk(log: &JustifiabilityLog, w: &Words, edge: Option<String>, depth: usize, out: &mut String) {
        let _ = write!(out, "{}", "  ".repeat(depth));
        if let Some(e) = edge {
            let _ = write!(out, "[{e}] ");
        }
        let _ = write!(out, "JQ: {}", render_words(w));
        if let Some(x) = log.answered.get(w) {
            let _ = write!(out, "  CE: {}", render_point(x));
        }
        out.push('\n');
        for (i, child) in log.children.get(w).into_iter().flatten() {
            let syms: Vec<String> = child[*i].symbols().iter().map(u32::to_string).collect();
            walk(log, child, Some(format!("{} <= s{}", syms.join(","), i + 1)), depth + 1, out);
        }
    }
    let mut out = String::new();
    walk(log, &log.root, None, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::run_session;

    fn w(s: &[u32]) -> Word {
        Word(s.to_vec())
    }

    #[test]
    fn worked_example_k2() {
        let mut adv = PrefixAdversary::new(2, 64, 4);
        let q = |a: &[u32], b: &[u32]| Query::Sub(product(&vec![w(a), w(b)]));
        let cex = |adv: &mut PrefixAdversary, q: Query| match adv.answer(&q).unwrap() {
            Answer::Counterexample(x) => x,
            a => panic!("{a}"),
        };
        let pt = |a: &[u32], x: u32, b: &[u32], y: u32| {
            Point::Vector(vec![Point::pair(a, x), Point::pair(b, y)])
        };
        assert_eq!(cex(&mut adv, q(&[], &[])), pt(&[], 1, &[], 2));
        assert_eq!(
            adv.log().justifiable.iter().filter(|c| word_sum(c) == 1).cloned().collect::<Vec<_>>(),
            vec![vec![w(&[]), w(&[2])], vec![w(&[1]), w(&[])]]
        );
        assert_eq!(cex(&mut adv, q(&[1], &[])), pt(&[1], 3, &[], 4));
        assert_eq!(cex(&mut adv, q(&[], &[2])), pt(&[], 5, &[2], 6));
        let level2: BTreeSet<Words> =
            adv.log().justifiable.iter().filter(|c| word_sum(c) == 2).cloned().collect();
        let expected: BTreeSet<Words> = [
            vec![w(&[1]), w(&[4])],
            vec![w(&[1, 3]), w(&[])],
            vec![w(&[5]), w(&[2])],
            vec![w(&[]), w(&[2, 6])],
        ]
        .into();
        assert_eq!(level2, expected);
        assert_eq!(cex(&mut adv, q(&[], &[])), pt(&[], 1, &[], 2));
        assert_eq!(count_justifiable(adv.log(), 2).unwrap(), 4);
        let tree = render_tree(adv.log());
        assert!(tree.starts_with("JQ: (c(λ),c(λ))  CE: ((λ,1),(λ,2))\n"));
        assert!(tree.contains("    [1,3 <= s1] JQ: (c(1·3),c(λ))\n"));
        assert!(tree.contains("  [2 <= s2] JQ: (c(λ),c(2))  CE: ((λ,5),(2,6))\n"));
    }

    #[test]
    fn precondition_is_checked() {
        let mut adv = PrefixAdversary::new(2, 64, 4);
        assert_eq!(count_justifiable(adv.log(), 0).unwrap(), 1);
        assert!(matches!(count_justifiable(adv.log(), 1), Err(Error::PreconditionUnmet(_))));
        adv.answer(&Query::Eq(product(&vec![w(&[]), w(&[])]))).unwrap();
        assert_eq!(count_justifiable(adv.log(), 1).unwrap(), 2);
        assert!(count_justifiable(adv.log(), 2).is_err());
    }

    #[test]
    fn non_justifiable_queries_add_nothing() {
        let mut adv = PrefixAdversary::new(2, 64, 4);
        adv.answer(&Query::Sub(product(&vec![w(&[7]), w(&[])]))).unwrap();
        assert_eq!(adv.log().justifiable.len(), 1);
        let x = adv.log().answered.values().next().unwrap().clone();
        assert_eq!(x, Point::Vector(vec![Point::pair(&[7], 1), Point::pair(&[], 2)]));
    }

    #[test]
    fn breadth_first_counts() {
        for (k, r) in [(2, 0), (2, 1), (2, 2), (2, 3), (3, 2)] {
            let mut adv = PrefixAdversary::new(k, 256, r + 1);
            let mut bfs = BreadthFirstLearner::new(k, QueryKind::Eq, r);
            let res = run_session(&mut bfs, &mut adv, 10_000).unwrap();
            let expected_queries: usize = (0..r).map(|j| k.pow(j as u32)).sum();
            assert_eq!(res.stats.total as usize, expected_queries);
            assert_eq!(count_justifiable(adv.log(), r).unwrap(), k.pow(r as u32));
            assert_eq!(bfs.frontier().len(), k.pow(r as u32));
        }
    }
}
