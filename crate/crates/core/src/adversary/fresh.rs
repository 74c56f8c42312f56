use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Hands out naturals unseen in any query or answer so far, counting up from 1.
#[derive(Clone, Debug)]
pub struct FreshValueSource {
    next: u32,
    bound: u32,
    used: BTreeSet<u32>,
}

impl FreshValueSource {
    /// Values are drawn from `[1, bound)`.
    pub fn new(bound: u32) -> Self {
        FreshValueSource { next: 1, bound, used: BTreeSet::new() }
    }

    /// Marks values as seen, e.g. the symbols of a query.
    pub fn observe<I: IntoIterator<Item = u32>>(&mut self, values: I) {
        self.used.extend(values);
    }

    pub fn fresh(&mut self) -> Result<u32> {
        while self.used.contains(&self.next) {
            self.next += 1;
        }
        if self.next >= self.bound {
            return Err(Error::FreshValuesExhausted(self.bound));
        }
        let v = self.next;
        self.used.insert(v);
        self.next += 1;
        Ok(v)
    }

    pub fn used(&self) -> &BTreeSet<u32> {
        &self.used
    }
}
