use std::collections::BTreeSet;

use crate::concepts::{ClassId, ConceptDesc, Point};
use crate::error::{Error, Result};
use crate::protocol::{Answer, Oracle, Query};

/// Plays against learners of `Singletons(m)^k`, ruling out one candidate per
/// query for as long as two or more remain.
#[derive(Clone, Debug)]
pub struct SingletonAdversary {
    m: u32,
    k: usize,
    survivors: BTreeSet<Vec<i64>>,
}

impl SingletonAdversary {
    pub fn new(m: u32, k: usize) -> Self {
        let class = ClassId::power(ClassId::Singletons { m }, k);
        let survivors = class
            .points()
            .expect("singleton products enumerate")
            .into_iter()
            .map(|p| ints(&p).expect("integer vectors"))
            .collect();
        SingletonAdversary { m, k, survivors }
    }

    pub fn class(&self) -> ClassId {
        ClassId::power(ClassId::Singletons { m: self.m }, self.k)
    }

    pub fn survivors(&self) -> usize {
        self.survivors.len()
    }

    /// The lexicographically last surviving target.
    pub fn committed_target(&self) -> ConceptDesc {
        let last = self.survivors.iter().next_back().expect("a survivor always remains");
        ConceptDesc::Product(last.iter().map(|v| ConceptDesc::Singleton(*v as u32)).collect())
    }

    /// Whether `x` is the target; rules `x` out unless it is the last survivor.
    fn probe(&mut self, x: Vec<i64>) -> bool {
        if self.survivors.len() == 1 && self.survivors.contains(&x) {
            return true;
        }
        self.survivors.remove(&x);
        false
    }
}

fn ints(p: &Point) -> Option<Vec<i64>> {
    p.coords()?
        .iter()
        .map(|c| match c {
            Point::Int(v) => Some(*v),
            _ => None,
        })
        .collect()
}

fn singleton_point(c: &ConceptDesc) -> Option<Vec<i64>> {
    c.parts()?
        .iter()
        .map(|p| match p {
            ConceptDesc::Singleton(j) => Some(i64::from(*j)),
            _ => None,
        })
        .collect()
}

impl Oracle for SingletonAdversary {
    fn answer(&mut self, query: &Query) -> Result<Answer> {
        let class = self.class();
        match query {
            Query::Mem(x) => {
                class.check_point(x)?;
                Ok(Answer::from_bool(self.probe(ints(x).expect("checked point"))))
            }
            Query::Sub(c) | Query::Eq(c) => {
                class.check_concept(c)?;
                let x = singleton_point(c).expect("checked concept");
                let point = Point::Vector(x.iter().map(|v| Point::Int(*v)).collect());
                Ok(if self.probe(x) { Answer::Yes } else { Answer::Counterexample(point) })
            }
            q => Err(Error::UnsupportedQuery(format!(
                "the singleton adversary answers Mem, Sub and EQ, not {}",
                q.kind()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_is_the_query_point() {
        let mut adv = SingletonAdversary::new(2, 2);
        let q = Query::Eq(ConceptDesc::Product(vec![ConceptDesc::Singleton(0); 2]));
        assert_eq!(
            adv.answer(&q).unwrap(),
            Answer::Counterexample(Point::Vector(vec![Point::Int(0), Point::Int(0)]))
        );
        assert_eq!(adv.survivors(), 8);
    }

    #[test]
    fn last_survivor_is_forced() {
        let mut adv = SingletonAdversary::new(1, 2);
        for p in [[0, 0], [0, 1], [1, 1]] {
            let x = Point::Vector(p.iter().map(|v| Point::Int(*v)).collect());
            assert_eq!(adv.answer(&Query::Mem(x)).unwrap(), Answer::No);
        }
        let last = Point::Vector(vec![Point::Int(1), Point::Int(0)]);
        assert_eq!(adv.answer(&Query::Mem(last)).unwrap(), Answer::Yes);
        assert_eq!(
            adv.committed_target(),
            ConceptDesc::Product(vec![ConceptDesc::Singleton(1), ConceptDesc::Singleton(0)])
        );
    }
}
