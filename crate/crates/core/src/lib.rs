//! Exact weighted domination (`γ_w`), weighted dispersion (`ρ_w`) and
//! weighted independent domination (`γ^i_w`).
//!
//! Three solver families return optimal answers together with a proof:
//!
//! * [`interval`]: interval graphs, certificate with `γ_w = ρ_w`;
//! * [`tree_edge`]: line graphs of edge sets of a tree, same certificate;
//! * [`split`]: split graphs, where `γ_w = γ^i_w` (but not always `ρ_w`).
//!
//! The [`oracles`] module holds independent brute-force and exact rational
//! LP routines used to check all of the above.

pub mod graph;
pub mod instances;
pub mod interval;
pub mod oracles;
pub mod split;
pub mod tree_edge;

use thiserror::Error;

pub use graph::{
    build_intersection_graph, verify_certificate, Certificate, DominationFunction, GraphError,
    HostTree, Rejection, Vertex, WeightedGraph,
};

/// A structural guarantee of one of the solvers failed at runtime. This
/// always indicates a bug; callers should abort rather than recover.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("theorem violation: {0}")]
pub struct TheoremViolation(pub String);
