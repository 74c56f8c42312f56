//! Adversarial oracles that witness the lower bounds.
//!
//! Each adversary answers without committing to a target in advance and
//! comes with a certificate: an enumeration or replay showing that more than
//! one concept is still consistent with everything it has said.

mod fresh;
mod positive;
mod prefix;
mod singleton;

pub use fresh::FreshValueSource;
pub use positive::{positive_certificate, PositiveAdversary};
pub use prefix::{
    count_justifiable, prefix_certificate, render_tree, word_sum, BreadthFirstLearner,
    JustifiabilityLog, PrefixAdversary, Words,
};
pub use singleton::SingletonAdversary;
