//! Combinatorial rigidity toolkit.
//!
//! Computes generic rigidity-matroid ranks over a large prime field, tests
//! rigidity and global rigidity of graphs in dimension d, builds and probes
//! ordering-induced subgraphs, evaluates clique-partition rank bounds, and
//! constructs the tight non-globally-rigid vertex-transitive family of
//! degree d(d+1) - 1.

pub mod automorphism;
pub mod cliques;
pub mod connectivity;
pub mod construct;
pub mod error;
pub mod field;
pub mod global;
pub mod graph;
pub mod ordered_subgraph;
pub mod partition;
pub mod rank;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, Pair};
