//! Modular query-based concept learning.
//!
//! Learners for cross-products and disjoint unions of concept classes are
//! assembled from per-component learners. A combinator poses queries about
//! the composite target to an [`Oracle`] and plays the oracle for each of its
//! sublearners, which are resumable state machines implementing [`Learner`].
//!
//! Module map:
//!
//! * [`protocol`]: query/answer vocabulary, sessions, honest oracles, accounting.
//! * [`concepts`]: bounded concept classes, canonical forms, reference learners.
//! * [`composite`]: product and disjoint-union combinators, the prefix-class learner.
//! * [`adversary`]: adversarial oracles witnessing the lower bounds.
//! * [`pac`]: sample-size bounds, consistent-subconcept search, PAC trials.

pub mod adversary;
pub mod composite;
pub mod concepts;
mod error;
pub mod pac;
pub mod protocol;

pub use concepts::{ClassId, ConceptDesc, Point, SublearnerSpec, Word};
pub use error::{Error, Partial, Result};
pub use protocol::{
    Answer, HonestOracle, Learner, LearnerEvent, Oracle, Query, QueryKind, QueryStats, Session,
    SessionResult, Transcript,
};
