use crate::concepts::{contains, ClassId, ConceptDesc, Point};

use super::bounds::growth_term;

/// Returns a concept consistent with a labeled sample, or `None`.
///
/// The accuracy and confidence arguments are for approximate finders;
/// the finders here are exact and ignore them.
pub trait ConsistencyFinder {
    fn vc_dimension(&self) -> u32;
    fn find(&self, labels: &[(Point, bool)], epsilon: f64, delta: f64) -> Option<ConceptDesc>;
}

/// Exact finder for intervals over `0..u`: the tightest interval around
/// the positives.
#[derive(Clone, Copy, Debug)]
pub struct IntervalFinder {
    pub u: u32,
    /// Answer `∅` when there are no positives.
    pub allow_empty: bool,
}

impl ConsistencyFinder for IntervalFinder {
    fn vc_dimension(&self) -> u32 {
        self.u.min(2)
    }

    fn find(&self, labels: &[(Point, bool)], _: f64, _: f64) -> Option<ConceptDesc> {
        let int = |x: &Point| match x {
            Point::Int(v) if (0..i64::from(self.u)).contains(v) => Some(*v),
            _ => None,
        };
        let mut hull: Option<(i64, i64)> = None;
        for (x, l) in labels {
            let v = int(x)?;
            if *l {
                hull = Some(hull.map_or((v, v), |(lo, hi)| (lo.min(v), hi.max(v))));
            }
        }
        let negs = || labels.iter().filter(|(_, l)| !l).filter_map(|(x, _)| int(x));
        match hull {
            Some((lo, hi)) => {
                negs().all(|v| v < lo || v > hi).then(|| ConceptDesc::interval(lo, hi))
            }
            None if self.allow_empty => Some(ConceptDesc::Empty),
            None => {
                let mut banned = vec![false; self.u as usize];
                negs().for_each(|v| banned[v as usize] = true);
                let v = banned.iter().position(|b| !b)? as i64;
                Some(ConceptDesc::interval(v, v))
            }
        }
    }
}

/// Tries every concept of an enumerable class in order.
#[derive(Clone, Debug)]
pub struct BruteForceFinder {
    pub class: ClassId,
    concepts: Vec<ConceptDesc>,
}

impl BruteForceFinder {
    pub fn new(class: ClassId) -> crate::Result<Self> {
        let concepts = class.concepts()?;
        Ok(BruteForceFinder { class, concepts })
    }
}

impl ConsistencyFinder for BruteForceFinder {
    fn vc_dimension(&self) -> u32 {
        self.class.vc_dimension().unwrap_or(0)
    }

    fn find(&self, labels: &[(Point, bool)], _: f64, _: f64) -> Option<ConceptDesc> {
        self.concepts
            .iter()
            .find(|c| labels.iter().all(|(x, l)| contains(&self.class, c, x).ok() == Some(*l)))
            .cloned()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubconceptSearch {
    pub result: Option<(ConceptDesc, ConceptDesc)>,
    /// Recursive calls made, not counting the root.
    pub branches: u64,
    pub delta_prime: f64,
    pub epsilon_prime: f64,
}

impl SubconceptSearch {
    /// `|S⁻| · (e·|S⁻|/d₁)^d₁`
    pub fn branch_bound(negatives: usize, d1: u32) -> f64 {
        if negatives == 0 || d1 == 0 {
            return negatives as f64;
        }
        let n = negatives as f64;
        n * (std::f64::consts::E * n / f64::from(d1)).powi(d1 as i32)
    }
}

/// Searches for `(c₁, c₂)` with `S⁺ ⊆ c₁×c₂` and `S⁻ ∩ c₁×c₂ = ∅`.
///
/// Each negative `(x₁, x₂)` is either outside `c₁` or inside `c₁` and
/// outside `c₂`. Both choices are explored depth first and a branch is
/// pruned as soon as the first-coordinate labels become unrealizable.
pub fn find_subconcepts(
    positives: &[Point],
    negatives: &[Point],
    delta: f64,
    f1: &dyn ConsistencyFinder,
    f2: &dyn ConsistencyFinder,
) -> SubconceptSearch {
    let n = negatives.len() as u64;
    let g1 = growth_term(n, f1.vc_dimension());
    let g2 = growth_term(n, f2.vc_dimension());
    let delta_prime = delta / (n as f64 * g1 + g2);
    let total = positives.len() + negatives.len();
    let epsilon_prime = if total == 0 { 1.0 } else { 1.0 / total as f64 };

    let proj = |x: &Point, i: usize| x.coords().and_then(|c| c.get(i).cloned());
    let mut l1: Vec<(Point, bool)> = positives.iter().filter_map(|x| proj(x, 0)).map(|v| (v, true)).collect();
    let mut l2: Vec<(Point, bool)> = positives.iter().filter_map(|x| proj(x, 1)).map(|v| (v, true)).collect();

    let mut search = Search {
        negatives: negatives.iter().map(|x| (proj(x, 0), proj(x, 1))).collect(),
        f1,
        f2,
        eps: epsilon_prime,
        delta: delta_prime,
        branches: 0,
    };
    let malformed = positives.iter().any(|x| !x.coords().is_some_and(|c| c.len() == 2))
        || search.negatives.iter().any(|(a, b)| a.is_none() || b.is_none());
    let result = if malformed { None } else { search.run(0, &mut l1, &mut l2) };
    SubconceptSearch { result, branches: search.branches, delta_prime, epsilon_prime }
}

struct Search<'a> {
    negatives: Vec<(Option<Point>, Option<Point>)>,
    f1: &'a dyn ConsistencyFinder,
    f2: &'a dyn ConsistencyFinder,
    eps: f64,
    delta: f64,
    branches: u64,
}

impl Search<'_> {
    fn run(
        &mut self,
        i: usize,
        l1: &mut Vec<(Point, bool)>,
        l2: &mut Vec<(Point, bool)>,
    ) -> Option<(ConceptDesc, ConceptDesc)> {
        if i == self.negatives.len() {
            let c2 = self.f2.find(l2, self.eps, self.delta)?;
            let c1 = self.f1.find(l1, self.eps, self.delta)?;
            return Some((c1, c2));
        }
        let (x1, x2) = self.negatives[i].clone();
        let (x1, x2) = (x1?, x2?);

        l1.push((x1.clone(), false));
        if self.f1.find(l1, self.eps, self.delta).is_some() {
            self.branches += 1;
            if let Some(r) = self.run(i + 1, l1, l2) {
                return Some(r);
            }
        }
        l1.pop();

        l1.push((x1, true));
        l2.push((x2, false));
        if self.f1.find(l1, self.eps, self.delta).is_some() {
            self.branches += 1;
            if let Some(r) = self.run(i + 1, l1, l2) {
                return Some(r);
            }
        }
        l1.pop();
        l2.pop();
        None
    }
}
