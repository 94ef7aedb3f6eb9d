//! Exact witness search for sparse graph classes at desk scale.
//!
//! The crate detects the combinatorial witnesses that separate sparse graph
//! families from dense ones — subdivided cliques, shallow (topological)
//! clique minors, half-graph ladders, shattered sets — and builds the gadget
//! graphs that transport those witnesses between plain graphs and coloured
//! digraphs (relational structures with arity ≤ 2). Every search returns a
//! certificate that can be re-verified independently of the search that
//! produced it, and every verdict is tri-state: a budgeted search never
//! reports "no" when it merely ran out of budget.
//!
//! Module map:
//! - [`graph`] / [`structure`]: immutable graph and coloured-digraph types,
//!   basic exact algorithms, Gaifman graphs.
//! - [`format`]: line-oriented text formats for both.
//! - [`generators`]: named graph families and gadget constructions.
//! - [`minors`]: certificate types and exhaustive (topological) r-minor
//!   search.
//! - [`logic`]: first-order formulas, brute-force evaluation, ladder /
//!   shattering / array witness search, interpretation checking.
//! - [`density`]: family-level reports (edge-growth fit, superflat profile,
//!   nowhere-dense and ultraflat sample verdicts).
//!
//! With the default `parallel` feature, family-level and per-query fan-out
//! runs on rayon; results are reduced in input order so output is identical
//! to the sequential build.

pub mod budget;
pub mod density;
mod exec;
pub mod format;
pub mod generators;
pub mod graph;
pub mod logic;
pub mod minors;
pub mod structure;

pub use budget::{SearchBudget, SearchOutcome};
pub use graph::{disjoint_union, DisjointUnion, Graph, GraphError, GraphStats};
pub use structure::{RelStructure, Signature, StructureError};
