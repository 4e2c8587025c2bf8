//! Critical relaxed stable matchings in bipartite graphs with two-sided ties
//! and two-sided critical vertices.
//!
//! * [`model`]: instances, instance files and the derived strict lists.
//! * [`engine`]: the multi-level proposal algorithm.
//! * [`verify`]: blocking pairs, relaxed stability, criticality and the
//!   level-structure audit, all independent of the engine.
//! * [`oracle`]: exhaustive search on small instances.
//! * [`gen`]: seeded random instances.

pub mod engine;
pub mod gen;
pub mod model;
pub mod oracle;
pub mod verify;

pub use engine::{solve, Level, LeveledMatching, LeveledPair, Solution};
pub use model::{parse_instance, parse_matching, Instance, Matching};
