use rand::distributions::{Distribution as _, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::concepts::{contains, ClassId, ConceptDesc, Point};
use crate::error::{Error, Result};
use crate::protocol::{honest_answer, Answer, Oracle, OracleState, Query};

/// A sequence of labeled points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabeledSample {
    pub entries: Vec<(Point, bool)>,
}

impl LabeledSample {
    /// `(S⁺, S⁻)`
    pub fn split(&self) -> (Vec<Point>, Vec<Point>) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (x, l) in &self.entries {
            if *l { pos.push(x.clone()) } else { neg.push(x.clone()) }
        }
        (pos, neg)
    }
}

/// An explicit probability table over a finite universe.
#[derive(Clone, Debug)]
pub struct Distribution {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
    index: WeightedIndex<f64>,
}

impl Distribution {
    pub fn new(points: Vec<Point>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::Domain("one weight per point".into()));
        }
        let total: f64 = weights.iter().sum();
        let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let index = WeightedIndex::new(&weights).map_err(|e| Error::Domain(e.to_string()))?;
        Ok(Distribution { points, weights, index })
    }

    pub fn uniform(class: &ClassId) -> Result<Self> {
        let points = class.points()?;
        let n = points.len();
        Self::new(points, vec![1.0; n])
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        self.points[self.index.sample(rng)].clone()
    }
}

/// `m` labeled draws from `dist`, deterministic in `seed`.
pub fn draw_sample(
    dist: &Distribution,
    class: &ClassId,
    target: &ConceptDesc,
    m: usize,
    seed: u64,
) -> Result<LabeledSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(m);
    for _ in 0..m {
        let x = dist.draw(&mut rng);
        let l = contains(class, target, &x)?;
        entries.push((x, l));
    }
    Ok(LabeledSample { entries })
}

/// The probability mass on which `h` and `target` disagree.
pub fn exact_error(
    dist: &Distribution,
    class: &ClassId,
    target: &ConceptDesc,
    h: &ConceptDesc,
) -> Result<f64> {
    let mut err = 0.0;
    for (x, w) in dist.points.iter().zip(&dist.weights) {
        if contains(class, target, x)? != contains(class, h, x)? {
            err += w;
        }
    }
    Ok(err)
}

/// Answers EX with seeded draws from `dist` and Mem truthfully.
pub struct SampleOracle {
    class: ClassId,
    target: ConceptDesc,
    dist: Distribution,
    rng: ChaCha8Rng,
}

impl SampleOracle {
    pub fn new(class: ClassId, target: ConceptDesc, dist: Distribution, seed: u64) -> Self {
        SampleOracle { class, target, dist, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Oracle for SampleOracle {
    fn answer(&mut self, query: &Query) -> Result<Answer> {
        match query {
            Query::Ex => {
                let x = self.dist.draw(&mut self.rng);
                let l = contains(&self.class, &self.target, &x)?;
                Ok(Answer::Labeled(x, l))
            }
            Query::Mem(_) => {
                honest_answer(&self.class, &self.target, query, &mut OracleState::default())
            }
            q => Err(Error::UnsupportedQuery(format!("sample oracle answers EX and Mem, not {}", q.kind()))),
        }
    }
}
