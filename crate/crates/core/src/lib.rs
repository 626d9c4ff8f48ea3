//! Second-neighbourhood analysis of oriented graphs.
//!
//! A vertex `u` of an oriented graph is a *Sullivan vertex* when
//! `d⁺⁺(u) >= d⁻(u)` and a *Seymour vertex* when `d⁺⁺(u) >= d⁺(u)`, where
//! `d⁺⁺(u)` counts vertices at distance exactly two from `u`. This crate
//! computes these quantities, builds the constructive witnesses known for
//! split digraphs and almost regular tournaments, generates test families,
//! and sweeps graph spaces looking for counterexamples.

pub mod analysis;
pub mod checks;
pub mod format;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod rng;
pub mod split;
pub mod suite;

pub use analysis::AnalysisError;
pub use checks::{Check, Outcome};
pub use format::{FormatError, GraphFile, GraphFormat};
pub use generators::{Family, GenError, GenSpec, Instance};
pub use graph::{DegreeProfile, Digraph, GraphError, VertexSet, MAX_VERTICES};
pub use harness::{HarnessError, VerificationReport};
pub use split::{SplitDigraph, SplitError};
