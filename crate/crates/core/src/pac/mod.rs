//! PAC learning of cross-products.
//!
//! Sample-size and growth-function bounds, labeled samples drawn from
//! explicit distributions, the consistent-subconcept search for two-fold
//! products, and the membership-accelerated learner for k-fold products.

mod bounds;
mod learn;
mod sample;
mod subconcepts;
mod trials;

pub use bounds::{growth_bound, growth_term, sample_size, vc_product_bound, PacParams, A1, A2};
pub use learn::{pac_learn_product, pac_learn_with_mem, MemPacOutcome, PacOutcome};
pub use sample::{draw_sample, exact_error, Distribution, LabeledSample, SampleOracle};
pub use subconcepts::{
    find_subconcepts, BruteForceFinder, ConsistencyFinder, IntervalFinder, SubconceptSearch,
};
pub use trials::{rectangle_trial, write_csv, PacMode, TrialReport};
