use serde::{Serialize, Serializer};

use super::{ConceptDesc, Point, Word};
use crate::error::{Error, Result};

/// The concept classes shipped with the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassId {
    /// `{{j} | j in 0..=m}` over `{0..=m}`.
    Singletons { m: u32 },
    /// Nonempty intervals `[lo,hi]` over `[0,u)`.
    Intervals { u: u32 },
    /// Prefix concepts `c(s)` with `|s| <= max_len`, symbols and values in `[0,u)`.
    Prefix { u: u32, max_len: usize },
    /// Every subset of `[0,u)`, the empty set included.
    FiniteSets { u: u32 },
    /// `{{a}, {a,b}}` over `{a,b}`.
    PairLeft,
    /// `{[0,u-1], [-u,-1]}` over `[-u,u)`: the non-negative and negative halves.
    PairRight { u: u32 },
    Product(Vec<ClassId>),
    Union(Vec<ClassId>),
}

pub(crate) const SYM_A: char = 'a';
pub(crate) const SYM_B: char = 'b';

impl ClassId {
    /// The two-component class `PairLeft x PairRight(u)`.
    pub fn pair_demo(u: u32) -> ClassId {
        ClassId::Product(vec![ClassId::PairLeft, ClassId::PairRight { u }])
    }

    pub fn power(base: ClassId, k: usize) -> ClassId {
        ClassId::Product(vec![base; k])
    }

    /// Component classes of a product or union.
    pub fn components(&self) -> Option<&[ClassId]> {
        match self {
            ClassId::Product(c) | ClassId::Union(c) => Some(c),
            _ => None,
        }
    }

    pub fn contains_empty(&self) -> bool {
        match self {
            ClassId::FiniteSets { .. } => true,
            ClassId::Product(parts) => parts.iter().any(ClassId::contains_empty),
            ClassId::Union(parts) => parts.iter().all(ClassId::contains_empty),
            _ => false,
        }
    }

    /// VC dimension of an atomic class.
    pub fn vc_dimension(&self) -> Option<u32> {
        match self {
            ClassId::Singletons { m } => Some(u32::from(*m > 0)),
            ClassId::Intervals { u } => Some((*u).min(2)),
            ClassId::FiniteSets { u } => Some(*u),
            ClassId::PairLeft | ClassId::PairRight { .. } => Some(1),
            _ => None,
        }
    }

    pub fn a() -> Point {
        Point::Sym(SYM_A)
    }

    pub fn b() -> Point {
        Point::Sym(SYM_B)
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        let ok = match (self, x) {
            (ClassId::Singletons { m }, Point::Int(v)) => (0..=i64::from(*m)).contains(v),
            (ClassId::Intervals { u }, Point::Int(v))
            | (ClassId::FiniteSets { u }, Point::Int(v)) => (0..i64::from(*u)).contains(v),
            (ClassId::PairLeft, Point::Sym(c)) => *c == SYM_A || *c == SYM_B,
            (ClassId::PairRight { u }, Point::Int(v)) => {
                (-i64::from(*u)..i64::from(*u)).contains(v)
            }
            (ClassId::Prefix { u, max_len }, Point::Pair(w, v)) => {
                w.len() <= *max_len && w.symbols().iter().all(|s| s < u) && v < u
            }
            (ClassId::Product(parts), Point::Vector(coords)) => {
                if parts.len() != coords.len() {
                    return Err(Error::UniverseMismatch(format!(
                        "point {x} has arity {}, class {self} has arity {}",
                        coords.len(),
                        parts.len()
                    )));
                }
                for (c, p) in parts.iter().zip(coords) {
                    c.check_point(p)?;
                }
                true
            }
            (ClassId::Union(parts), Point::Tagged(i, inner)) => match parts.get(*i) {
                Some(c) => {
                    c.check_point(inner)?;
                    true
                }
                None => false,
            },
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!(
                "point {x} is outside the universe of {self}"
            )))
        }
    }

    /// Checks that `c` is a member of this class.
    pub fn check_concept(&self, c: &ConceptDesc) -> Result<()> {
        let ok = match (self, c) {
            (_, ConceptDesc::Empty) => self.contains_empty(),
            (ClassId::Singletons { m }, ConceptDesc::Singleton(j)) => j <= m,
            (ClassId::Intervals { u }, ConceptDesc::Interval { lo, hi }) => {
                0 <= *lo && lo <= hi && *hi < i64::from(*u)
            }
            (ClassId::FiniteSets { u }, ConceptDesc::FiniteSet(s)) => s
                .iter()
                .all(|p| matches!(p, Point::Int(v) if (0..i64::from(*u)).contains(v))),
            (ClassId::PairLeft, ConceptDesc::FiniteSet(s)) => {
                *s == [Self::a()].into() || *s == [Self::a(), Self::b()].into()
            }
            (ClassId::PairRight { u }, ConceptDesc::Interval { lo, hi }) => {
                let u = i64::from(*u);
                (*lo, *hi) == (0, u - 1) || (*lo, *hi) == (-u, -1)
            }
            (ClassId::Prefix { u, max_len }, ConceptDesc::Prefix(w)) => {
                w.len() <= *max_len && w.symbols().iter().all(|s| s < u)
            }
            (ClassId::Product(classes), ConceptDesc::Product(parts))
            | (ClassId::Union(classes), ConceptDesc::Union(parts)) => {
                if classes.len() != parts.len() {
                    false
                } else {
                    for (cl, p) in classes.iter().zip(parts) {
                        cl.check_concept(p)?;
                    }
                    true
                }
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!(
                "concept {c} is not a member of {self}"
            )))
        }
    }

    /// Every concept of the class, in a fixed order. Products and unions are
    /// enumerated as cartesian products of their components' concepts.
    pub fn concepts(&self) -> Result<Vec<ConceptDesc>> {
        Ok(match self {
            ClassId::Singletons { m } => (0..=*m).map(ConceptDesc::Singleton).collect(),
            ClassId::Intervals { u } => {
                let u = i64::from(*u);
                let mut out = Vec::new();
                for lo in 0..u {
                    for hi in lo..u {
                        out.push(ConceptDesc::interval(lo, hi));
                    }
                }
                out
            }
            ClassId::FiniteSets { u } => {
                if *u > 16 {
                    return Err(Error::Domain(format!("{self} is too large to enumerate")));
                }
                (0u32..(1 << u))
                    .map(|mask| {
                        ConceptDesc::set(
                            (0..*u)
                                .filter(|b| mask & (1 << b) != 0)
                                .map(|b| Point::Int(i64::from(b))),
                        )
                    })
                    .collect()
            }
            ClassId::PairLeft => vec![
                ConceptDesc::set([Self::a()]),
                ConceptDesc::set([Self::a(), Self::b()]),
            ],
            ClassId::PairRight { u } => {
                let u = i64::from(*u);
                vec![ConceptDesc::interval(0, u - 1), ConceptDesc::interval(-u, -1)]
            }
            ClassId::Prefix { u, max_len } => all_words(*u, *max_len)?
                .into_iter()
                .map(ConceptDesc::Prefix)
                .collect(),
            ClassId::Product(parts) | ClassId::Union(parts) => {
                let lists = parts
                    .iter()
                    .map(ClassId::concepts)
                    .collect::<Result<Vec<_>>>()?;
                let wrap: fn(Vec<ConceptDesc>) -> ConceptDesc = match self {
                    ClassId::Product(_) => ConceptDesc::Product,
                    _ => ConceptDesc::Union,
                };
                cartesian(&lists).into_iter().map(wrap).collect()
            }
        })
    }

    /// Every point of the universe, in canonical order.
    pub fn points(&self) -> Result<Vec<Point>> {
        Ok(match self {
            ClassId::Singletons { m } => (0..=i64::from(*m)).map(Point::Int).collect(),
            ClassId::Intervals { u } | ClassId::FiniteSets { u } => {
                (0..i64::from(*u)).map(Point::Int).collect()
            }
            ClassId::PairLeft => vec![Self::a(), Self::b()],
            ClassId::PairRight { u } => {
                (-i64::from(*u)..i64::from(*u)).map(Point::Int).collect()
            }
            ClassId::Prefix { u, max_len } => {
                let mut out = Vec::new();
                for w in all_words(*u, *max_len)? {
                    for v in 0..*u {
                        out.push(Point::Pair(w.clone(), v));
                    }
                }
                out
            }
            ClassId::Product(parts) => {
                let lists = parts
                    .iter()
                    .map(ClassId::points)
                    .collect::<Result<Vec<_>>>()?;
                cartesian(&lists).into_iter().map(Point::Vector).collect()
            }
            ClassId::Union(parts) => {
                let mut out = Vec::new();
                for (i, p) in parts.iter().enumerate() {
                    out.extend(p.points()?.into_iter().map(|x| Point::tagged(i, x)));
                }
                out
            }
        })
    }

    /// Number of points in the universe, saturating.
    pub fn universe_size(&self) -> u64 {
        match self {
            ClassId::Singletons { m } => u64::from(*m) + 1,
            ClassId::Intervals { u } | ClassId::FiniteSets { u } => u64::from(*u),
            ClassId::PairLeft => 2,
            ClassId::PairRight { u } => 2 * u64::from(*u),
            ClassId::Prefix { u, max_len } => {
                let u = u64::from(*u);
                let mut words = 0u64;
                let mut level = 1u64;
                for _ in 0..=*max_len {
                    words = words.saturating_add(level);
                    level = level.saturating_mul(u);
                }
                words.saturating_mul(u)
            }
            ClassId::Product(parts) => parts
                .iter()
                .fold(1u64, |acc, p| acc.saturating_mul(p.universe_size())),
            ClassId::Union(parts) => parts
                .iter()
                .fold(0u64, |acc, p| acc.saturating_add(p.universe_size())),
        }
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn all_words(u: u32, max_len: usize) -> Result<Vec<Word>> {
    let size = (0..=max_len).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(u.max(1))));
    if !size.is_some_and(|s| s <= 1_000_000) {
        return Err(Error::Domain(format!(
            "prefix universe with u={u}, max_len={max_len} is too large to enumerate"
        )));
    }
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..u {
                next.push(w.extended(a));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Lexicographic cartesian product of the lists.
pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut v = prefix.clone();
                v.push(item.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}
