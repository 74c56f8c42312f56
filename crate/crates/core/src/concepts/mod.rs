//! Concept classes over bounded universes.
//!
//! Every class has a finite universe and a canonical total order on its
//! points; the derived `Ord` on [`Point`] is that order (integers ascending,
//! prefix-class pairs by shortlex word then value, vectors lexicographic,
//! tagged points by tag then inner point). Witnesses and counterexamples are
//! always least elements under it.

mod class;
mod forms;
pub mod learners;
mod ops;
pub mod random;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

pub use class::ClassId;
pub(crate) use class::cartesian;
pub use forms::{parse_class, parse_concept};
pub use learners::{all_negative_profile, all_negative_run, NegativeRun, SublearnerSpec};
pub use ops::{
    contains, diff_witness, equivalent, is_empty, members, subset_of, witness,
};

/// A string over the natural numbers, ordered shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    /// `self · a`
    pub fn extended(&self, a: u32) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Prefix or equal.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_strict_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }
}

impl From<&[u32]> for Word {
    fn from(s: &[u32]) -> Self {
        Word(s.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of some class universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Int(i64),
    /// Symbolic atoms (`a`, `b`) of the two-element pair universe.
    Sym(char),
    /// `(t, a)` in the prefix-class universe.
    Pair(Word, u32),
    /// Element of component `dim` of a disjoint union.
    Tagged(usize, Box<Point>),
    /// Element of a cross-product; one coordinate per component.
    Vector(Vec<Point>),
}

impl Point {
    pub fn tagged(dim: usize, inner: Point) -> Point {
        Point::Tagged(dim, Box::new(inner))
    }

    pub fn pair(word: &[u32], value: u32) -> Point {
        Point::Pair(Word(word.to_vec()), value)
    }

    pub fn coords(&self) -> Option<&[Point]> {
        match self {
            Point::Vector(c) => Some(c),
            _ => None,
        }
    }

    /// `self[i <- x]` for a vector point.
    pub fn substituted(&self, i: usize, x: Point) -> Option<Point> {
        let mut coords = self.coords()?.to_vec();
        *coords.get_mut(i)? = x;
        Some(Point::Vector(coords))
    }
}

/// A concept, described symbolically relative to its class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConceptDesc {
    Empty,
    Interval { lo: i64, hi: i64 },
    Singleton(u32),
    FiniteSet(BTreeSet<Point>),
    /// The prefix concept `c(s)`.
    Prefix(Word),
    Product(Vec<ConceptDesc>),
    Union(Vec<ConceptDesc>),
}

impl ConceptDesc {
    pub fn interval(lo: i64, hi: i64) -> Self {
        ConceptDesc::Interval { lo, hi }
    }

    pub fn prefix(word: &[u32]) -> Self {
        ConceptDesc::Prefix(Word(word.to_vec()))
    }

    pub fn set<I: IntoIterator<Item = Point>>(points: I) -> Self {
        ConceptDesc::FiniteSet(points.into_iter().collect())
    }

    pub fn parts(&self) -> Option<&[ConceptDesc]> {
        match self {
            ConceptDesc::Product(p) | ConceptDesc::Union(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        forms::write_word(f, self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        forms::write_point(f, self)
    }
}

impl fmt::Display for ConceptDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        forms::write_concept(f, self)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        forms::write_class(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let w = |s: &[u32]| Word(s.to_vec());
        assert!(w(&[]) < w(&[0]));
        assert!(w(&[9]) < w(&[0, 0]));
        assert!(w(&[1, 2]) < w(&[1, 3]));
        assert!(Point::pair(&[9], 9) < Point::pair(&[0, 0], 0));
        assert!(Point::pair(&[1], 2) < Point::pair(&[1], 3));
    }

    #[test]
    fn substitution() {
        let p = Point::Vector(vec![Point::Int(4), Point::Int(2)]);
        assert_eq!(
            p.substituted(1, Point::Int(12)),
            Some(Point::Vector(vec![Point::Int(4), Point::Int(12)]))
        );
        assert_eq!(p.substituted(2, Point::Int(0)), None);
        assert_eq!(Point::Int(3).substituted(0, Point::Int(0)), None);
    }
}
