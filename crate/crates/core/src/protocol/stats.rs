use std::collections::BTreeMap;

use serde::Serialize;

use super::{QueryKind, Transcript};

/// Per-kind query counters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    pub counts: BTreeMap<QueryKind, u64>,
    pub total: u64,
}

impl QueryStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, kind: QueryKind) {
        *self.counts.entry(kind).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn count(&self, kind: QueryKind) -> u64 {
        self.counts.get(&kind).copied().unwrap_or(0)
    }

    pub fn from_transcript(t: &Transcript) -> Self {
        let mut s = Self::new();
        for (q, _) in t {
            s.record(q.kind());
        }
        s
    }

    pub fn merge(&mut self, other: &QueryStats) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_insert(0) += v;
        }
        self.total += other.total;
    }
}

pub fn record_query(mut stats: QueryStats, kind: QueryKind) -> QueryStats {
    stats.record(kind);
    stats
}
