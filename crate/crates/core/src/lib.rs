//! Partial non-deterministic matrices (PNmatrices): construction, combination,
//! analysis and decision of single- and multiple-conclusion consequence.

pub mod analysis;
pub mod calculus;
pub mod combine;
pub mod engine;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod syntax;
mod util;

pub use engine::{Answer, Countermodel, Decider, Verdict};
pub use matrix::{Kind, PNMatrix, ValueMap, ValueSet, ViabilityReport};
pub use syntax::{Formula, Signature, Substitution};
