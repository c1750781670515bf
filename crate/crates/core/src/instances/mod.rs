//! Paper-style fixtures, seeded generators and the text formats.

pub mod fixtures;
pub mod format;
pub mod generate;

use crate::graph::{HostTree, Vertex, WeightedGraph};
use crate::interval::IntervalFamily;
use crate::split::SplitInstance;
use crate::tree_edge::EdgeWeights;

pub use format::{
    parse_certificate, parse_instance, write_certificate, write_instance, FormatError,
};
pub use generate::{
    gen_containment_free_intervals, gen_interval, gen_split, gen_subtrees, gen_tree, Lcg,
    ParameterOutOfRange, SubtreeFamily,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Interval(IntervalFamily),
    TreeEdges {
        tree: HostTree,
        weights: EdgeWeights,
    },
    Split(SplitInstance),
    SubtreeIntersection {
        tree: HostTree,
        subtrees: Vec<Vec<Vertex>>,
        weights: Vec<u64>,
    },
    Explicit(WeightedGraph),
}
