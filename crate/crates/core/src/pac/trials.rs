use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::concepts::random::random_concept;
use crate::concepts::ClassId;
use crate::error::{Error, Result};
use crate::protocol::QueryKind;

use super::bounds::PacParams;
use super::learn::{pac_learn_product, pac_learn_with_mem};
use super::sample::{exact_error, Distribution, SampleOracle};
use super::subconcepts::IntervalFinder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PacMode {
    Ex,
    Mem,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub m: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub error: f64,
    /// Search branches in EX mode, 0 in Mem mode.
    pub nodes: u64,
    pub mem: u64,
}

/// One trial on random axis-aligned rectangles over a `u × u` grid with
/// the uniform distribution.
pub fn rectangle_trial(u: u32, params: &PacParams, mode: PacMode, seed: u64) -> Result<TrialReport> {
    let base = ClassId::Intervals { u };
    let class = ClassId::power(base, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = random_concept(&class, &mut rng);
    let dist = Distribution::uniform(&class)?;
    let mut oracle = SampleOracle::new(class.clone(), target.clone(), dist.clone(), seed ^ 0x9e37_79b9);
    let f = IntervalFinder { u, allow_empty: true };
    let (h, nodes, stats) = match mode {
        PacMode::Ex => {
            let out = pac_learn_product(params, &mut oracle, &f, &f)?;
            (out.hypothesis, out.search.branches, out.stats)
        }
        PacMode::Mem => {
            let out = pac_learn_with_mem(params, &mut oracle, &[&f, &f])?;
            (out.hypothesis, 0, out.stats)
        }
    };
    Ok(TrialReport {
        seed,
        m: stats.count(QueryKind::Ex),
        epsilon: params.epsilon,
        delta: params.delta,
        error: exact_error(&dist, &class, &target, &h)?,
        nodes,
        mem: stats.count(QueryKind::Mem),
    })
}

pub fn write_csv<W: Write>(reports: &[TrialReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}
