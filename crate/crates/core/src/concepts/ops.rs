//! Decidable set operations on concept descriptions.

use super::{ClassId, ConceptDesc, Point, Word};
use crate::error::{Error, Result};

fn mismatch(class: &ClassId, c: &ConceptDesc) -> Error {
    Error::UniverseMismatch(format!("concept {c} does not describe a subset of {class}"))
}

/// `x ∈ c` under the semantics of `class`.
pub fn contains(class: &ClassId, c: &ConceptDesc, x: &Point) -> Result<bool> {
    class.check_point(x)?;
    contains_unchecked(class, c, x)
}

pub(crate) fn contains_unchecked(class: &ClassId, c: &ConceptDesc, x: &Point) -> Result<bool> {
    Ok(match (c, x) {
        (ConceptDesc::Empty, _) => false,
        (ConceptDesc::Interval { lo, hi }, Point::Int(v)) => lo <= v && v <= hi,
        (ConceptDesc::Singleton(j), Point::Int(v)) => i64::from(*j) == *v,
        (ConceptDesc::FiniteSet(s), _) => s.contains(x),
        (ConceptDesc::Prefix(s), Point::Pair(t, a)) => prefix_contains(s, t, *a),
        (ConceptDesc::Product(parts), Point::Vector(coords)) => {
            let classes = components(class, parts.len(), c)?;
            if coords.len() != parts.len() {
                return Err(mismatch(class, c));
            }
            for ((cl, part), y) in classes.iter().zip(parts).zip(coords) {
                if !contains_unchecked(cl, part, y)? {
                    return Ok(false);
                }
            }
            true
        }
        (ConceptDesc::Union(parts), Point::Tagged(i, inner)) => {
            let classes = components(class, parts.len(), c)?;
            match (classes.get(*i), parts.get(*i)) {
                (Some(cl), Some(part)) => contains_unchecked(cl, part, inner)?,
                _ => return Err(mismatch(class, c)),
            }
        }
        _ => return Err(mismatch(class, c)),
    })
}

/// Closed form of `c(s)` membership: `(t, a) ∈ c(s)` iff `t = s`, or `t` is a
/// strict prefix of `s` and `a` differs from the symbol of `s` at `|t|`.
pub(crate) fn prefix_contains(s: &Word, t: &Word, a: u32) -> bool {
    t == s || (t.is_strict_prefix_of(s) && s.symbols()[t.len()] != a)
}

fn components<'a>(class: &'a ClassId, k: usize, c: &ConceptDesc) -> Result<&'a [ClassId]> {
    match (class, c) {
        (ClassId::Product(cl), ConceptDesc::Product(_))
        | (ClassId::Union(cl), ConceptDesc::Union(_))
            if cl.len() == k =>
        {
            Ok(cl)
        }
        _ => Err(mismatch(class, c)),
    }
}

pub fn is_empty(c: &ConceptDesc) -> bool {
    match c {
        ConceptDesc::Empty => true,
        ConceptDesc::FiniteSet(s) => s.is_empty(),
        ConceptDesc::Product(parts) => parts.iter().any(is_empty),
        ConceptDesc::Union(parts) => parts.iter().all(is_empty),
        ConceptDesc::Interval { lo, hi } => lo > hi,
        ConceptDesc::Singleton(_) | ConceptDesc::Prefix(_) => false,
    }
}

/// Members of `c` in canonical order.
pub fn members<'a>(
    class: &'a ClassId,
    c: &'a ConceptDesc,
) -> Result<Box<dyn Iterator<Item = Point> + 'a>> {
    if is_empty(c) {
        return Ok(Box::new(std::iter::empty()));
    }
    Ok(match c {
        ConceptDesc::Empty => Box::new(std::iter::empty()),
        ConceptDesc::Interval { lo, hi } => Box::new((*lo..=*hi).map(Point::Int)),
        ConceptDesc::Singleton(j) => Box::new(std::iter::once(Point::Int(i64::from(*j)))),
        ConceptDesc::FiniteSet(s) => Box::new(s.iter().cloned()),
        ConceptDesc::Prefix(s) => {
            let u = match class {
                ClassId::Prefix { u, .. } => *u,
                _ => return Err(mismatch(class, c)),
            };
            Box::new((0..=s.len()).flat_map(move |l| {
                let t = s.prefix(l);
                let excluded = s.symbols().get(l).copied();
                (0..u)
                    .filter(move |v| Some(*v) != excluded)
                    .map(move |v| Point::Pair(t.clone(), v))
            }))
        }
        ConceptDesc::Product(parts) => {
            let classes = components(class, parts.len(), c)?;
            let lists = classes
                .iter()
                .zip(parts)
                .map(|(cl, p)| members(cl, p).map(Iterator::collect::<Vec<_>>))
                .collect::<Result<Vec<_>>>()?;
            Box::new(Odometer::new(lists).map(Point::Vector))
        }
        ConceptDesc::Union(parts) => {
            let classes = components(class, parts.len(), c)?;
            let mut iters: Vec<Box<dyn Iterator<Item = Point> + 'a>> = Vec::new();
            for (i, (cl, p)) in classes.iter().zip(parts).enumerate() {
                iters.push(Box::new(members(cl, p)?.map(move |x| Point::tagged(i, x))));
            }
            Box::new(iters.into_iter().flatten())
        }
    })
}

/// Lexicographic enumeration of a cartesian product without materialising it.
struct Odometer {
    lists: Vec<Vec<Point>>,
    idx: Vec<usize>,
    done: bool,
}

impl Odometer {
    fn new(lists: Vec<Vec<Point>>) -> Self {
        let done = lists.iter().any(Vec::is_empty);
        let idx = vec![0; lists.len()];
        Odometer { lists, idx, done }
    }
}

impl Iterator for Odometer {
    type Item = Vec<Point>;

    fn next(&mut self) -> Option<Vec<Point>> {
        if self.done {
            return None;
        }
        let item = self
            .idx
            .iter()
            .zip(&self.lists)
            .map(|(i, l)| l[*i].clone())
            .collect();
        let mut pos = self.lists.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.lists[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(item)
    }
}

/// Least member of `c`, or `None` if `c` is empty.
pub fn witness(class: &ClassId, c: &ConceptDesc) -> Option<Point> {
    members(class, c).ok()?.next()
}

/// Least point of `c1 ∖ c2`, or `None` iff `c1 ⊆ c2`.
pub fn diff_witness(class: &ClassId, c1: &ConceptDesc, c2: &ConceptDesc) -> Result<Option<Point>> {
    if is_empty(c1) {
        return Ok(None);
    }
    if is_empty(c2) {
        return Ok(witness(class, c1));
    }
    match (c1, c2) {
        (ConceptDesc::Product(a), ConceptDesc::Product(b)) => {
            let classes = components(class, a.len(), c1)?;
            if b.len() != a.len() {
                return Err(mismatch(class, c2));
            }
            Ok(product_diff(classes, a, b)?.map(Point::Vector))
        }
        (ConceptDesc::Union(a), ConceptDesc::Union(b)) => {
            let classes = components(class, a.len(), c1)?;
            if b.len() != a.len() {
                return Err(mismatch(class, c2));
            }
            for (i, ((cl, x), y)) in classes.iter().zip(a).zip(b).enumerate() {
                if let Some(p) = diff_witness(cl, x, y)? {
                    return Ok(Some(Point::tagged(i, p)));
                }
            }
            Ok(None)
        }
        _ => {
            for x in members(class, c1)? {
                if !contains_unchecked(class, c2, &x)? {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
    }
}

/// Lexicographically least element of `∏a ∖ ∏b`, all parts of `a` nonempty.
///
/// The first coordinate is the least member of `a[0]` whenever a completion
/// exists with it: either that member already falls outside `b[0]`, or the
/// remaining coordinates have a nonempty difference of their own.
fn product_diff(
    classes: &[ClassId],
    a: &[ConceptDesc],
    b: &[ConceptDesc],
) -> Result<Option<Vec<Point>>> {
    let Some(((cl, a0), b0)) = classes.first().zip(a.first()).zip(b.first()) else {
        return Ok(None);
    };
    let least_rest = || -> Option<Vec<Point>> {
        classes[1..]
            .iter()
            .zip(&a[1..])
            .map(|(c, p)| witness(c, p))
            .collect()
    };
    let Some(m0) = witness(cl, a0) else {
        return Ok(None);
    };
    if !contains_unchecked(cl, b0, &m0)? {
        return Ok(least_rest().map(|rest| prepend(m0, rest)));
    }
    if let Some(rest) = product_diff(&classes[1..], &a[1..], &b[1..])? {
        return Ok(Some(prepend(m0, rest)));
    }
    match diff_witness(cl, a0, b0)? {
        Some(d0) => Ok(least_rest().map(|rest| prepend(d0, rest))),
        None => Ok(None),
    }
}

fn prepend(head: Point, mut rest: Vec<Point>) -> Vec<Point> {
    rest.insert(0, head);
    rest
}

/// `c1 ⊆ c2`.
pub fn subset_of(class: &ClassId, c1: &ConceptDesc, c2: &ConceptDesc) -> Result<bool> {
    if is_empty(c1) {
        return Ok(true);
    }
    if is_empty(c2) {
        return Ok(false);
    }
    Ok(match (c1, c2) {
        (ConceptDesc::Interval { lo: a, hi: b }, ConceptDesc::Interval { lo: c, hi: d }) => {
            c <= a && b <= d
        }
        (ConceptDesc::Singleton(x), ConceptDesc::Singleton(y)) => x == y,
        (ConceptDesc::FiniteSet(x), ConceptDesc::FiniteSet(y)) => x.is_subset(y),
        (ConceptDesc::Prefix(s1), ConceptDesc::Prefix(s2)) => s1 == s2,
        // Componentwise, valid because the left product is nonempty.
        (ConceptDesc::Product(a), ConceptDesc::Product(b))
        | (ConceptDesc::Union(a), ConceptDesc::Union(b)) => {
            let classes = components(class, a.len(), c1)?;
            if a.len() != b.len() {
                return Err(mismatch(class, c2));
            }
            for ((cl, x), y) in classes.iter().zip(a).zip(b) {
                if !subset_of(cl, x, y)? {
                    return Ok(false);
                }
            }
            true
        }
        _ => return Err(mismatch(class, c2)),
    })
}

/// Extensional equality.
pub fn equivalent(class: &ClassId, c1: &ConceptDesc, c2: &ConceptDesc) -> Result<bool> {
    Ok(subset_of(class, c1, c2)? && subset_of(class, c2, c1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> ConceptDesc {
        ConceptDesc::interval(lo, hi)
    }

    fn pair(w: &[u32], v: u32) -> Point {
        Point::pair(w, v)
    }

    #[test]
    fn prefix_worked_example() {
        let class = ClassId::Prefix { u: 8, max_len: 3 };
        let c12 = ConceptDesc::prefix(&[1, 2]);
        assert!(contains(&class, &c12, &pair(&[1, 2], 5)).unwrap());
        assert!(!contains(&class, &c12, &pair(&[1], 2)).unwrap());
        assert!(contains(&class, &c12, &pair(&[1], 3)).unwrap());
        assert!(!contains(&class, &c12, &pair(&[], 1)).unwrap());
        assert!(contains(&class, &c12, &pair(&[], 3)).unwrap());
        assert!(!contains(&class, &c12, &pair(&[2], 0)).unwrap());
    }

    #[test]
    fn subset_examples() {
        let ints = ClassId::Intervals { u: 16 };
        assert!(subset_of(&ints, &iv(2, 5), &iv(0, 9)).unwrap());
        assert!(!subset_of(&ints, &iv(2, 5), &iv(4, 9)).unwrap());
        let prefix = ClassId::Prefix { u: 8, max_len: 3 };
        assert!(!subset_of(&prefix, &ConceptDesc::prefix(&[1]), &ConceptDesc::prefix(&[1, 2])).unwrap());
        let prod = ClassId::Product(vec![ints.clone(), ClassId::Intervals { u: 2 }]);
        assert!(subset_of(
            &prod,
            &ConceptDesc::Product(vec![iv(2, 5), iv(1, 1)]),
            &ConceptDesc::Product(vec![iv(2, 5), iv(0, 1)])
        )
        .unwrap());
    }

    #[test]
    fn witness_examples() {
        let ints = ClassId::Intervals { u: 16 };
        assert_eq!(diff_witness(&ints, &iv(2, 5), &iv(4, 9)).unwrap(), Some(Point::Int(2)));
        assert_eq!(diff_witness(&ints, &iv(2, 5), &iv(0, 9)).unwrap(), None);
        assert_eq!(witness(&ints, &iv(3, 7)), Some(Point::Int(3)));
        assert_eq!(witness(&ints, &ConceptDesc::Empty), None);
        let prefix = ClassId::Prefix { u: 8, max_len: 3 };
        assert_eq!(
            diff_witness(&prefix, &ConceptDesc::prefix(&[]), &ConceptDesc::prefix(&[1, 2])).unwrap(),
            Some(pair(&[], 1))
        );
        assert_eq!(witness(&prefix, &ConceptDesc::prefix(&[1])), Some(pair(&[], 0)));
        assert_eq!(witness(&prefix, &ConceptDesc::prefix(&[0])), Some(pair(&[], 1)));
    }

    #[test]
    fn product_with_empty_part_is_empty() {
        let class = ClassId::Product(vec![ClassId::FiniteSets { u: 3 }, ClassId::Intervals { u: 3 }]);
        let e = ConceptDesc::Product(vec![ConceptDesc::set([]), iv(0, 2)]);
        assert!(is_empty(&e));
        assert_eq!(members(&class, &e).unwrap().count(), 0);
        assert!(subset_of(&class, &e, &ConceptDesc::Empty).unwrap());
        let full = ConceptDesc::Product(vec![ConceptDesc::set([Point::Int(1)]), iv(0, 2)]);
        assert!(!subset_of(&class, &full, &e).unwrap());
        assert_eq!(
            diff_witness(&class, &full, &e).unwrap(),
            Some(Point::Vector(vec![Point::Int(1), Point::Int(0)]))
        );
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let ints = ClassId::Intervals { u: 4 };
        assert!(matches!(
            contains(&ints, &ConceptDesc::prefix(&[]), &Point::Int(0)),
            Err(Error::UniverseMismatch(_))
        ));
        assert!(matches!(
            contains(&ints, &iv(0, 1), &Point::Int(9)),
            Err(Error::UniverseMismatch(_))
        ));
    }

    #[test]
    fn product_diff_matches_enumeration() {
        let class = ClassId::power(ClassId::Intervals { u: 4 }, 3);
        let concepts = class.concepts().unwrap();
        for (i, a) in concepts.iter().enumerate().step_by(7) {
            for b in concepts.iter().skip(i % 5).step_by(11) {
                let brute = members(&class, a)
                    .unwrap()
                    .find(|x| !contains(&class, b, x).unwrap());
                assert_eq!(diff_witness(&class, a, b).unwrap(), brute, "{a} \\ {b}");
            }
        }
    }
}
