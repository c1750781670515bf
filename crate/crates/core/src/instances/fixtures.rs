//! Fixed instances with known answers.

use crate::graph::{HostTree, Vertex, WeightedGraph};
use crate::interval::{Interval, IntervalFamily};
use crate::split::{validate_split, SplitInstance};
use crate::tree_edge::EdgeWeights;

/// `[1,2]` w3, `[2,4]` w1, `[5,6]` w2: `γ_w = ρ_w = 5`.
pub fn iv3() -> IntervalFamily {
    IntervalFamily::new(vec![
        Interval::new(1, 2, 3),
        Interval::new(2, 4, 1),
        Interval::new(5, 6, 2),
    ])
    .expect("valid")
}

/// Path `r–a–b` (vertices 0–1–2), `w(r,a) = 2`, `w(a,b) = 5`.
pub fn path2() -> (HostTree, EdgeWeights) {
    let tree = HostTree::new(3, vec![(0, 1), (1, 2)]).expect("path");
    (tree, EdgeWeights::full(vec![2, 5]))
}

/// Path `r–a–b` with `w(r,a) = 4`, `w(a,b) = 1`.
pub fn stick() -> (HostTree, EdgeWeights) {
    let tree = HostTree::new(3, vec![(0, 1), (1, 2)]).expect("path");
    (tree, EdgeWeights::full(vec![4, 1]))
}

/// Vertex id of ray vertex `a_i^j` (`i` in 1..=3, `j` in 1..=4) in the forked
/// star; the center is 0.
pub fn forked_star_vertex(i: usize, j: usize) -> Vertex {
    1 + (i - 1) * 4 + (j - 1)
}

/// A star with three rays of length 3, each forked at its end: center `v`,
/// rays `v–a^1–a^2–a^3` plus `a^2–a^4`. Fifteen subtrees, in this order:
/// the three weight-1 forks `{a^2,a^3,a^4}`, the weight-2 paths
/// `{a^1,a^2,a^3}`, the weight-2 paths `{a^1,a^2,a^4}`, the weight-3 paths
/// `{v,a^1,a^2}`, and the weight-4 paths `{a_i^1,v,a_j^1}` for `i < j`.
///
/// Its intersection graph has `γ_w = 5` but `γ^i_w = 4`.
pub fn example_forked_star() -> (HostTree, Vec<Vec<Vertex>>, Vec<u64>) {
    let a = forked_star_vertex;
    let mut edges = Vec::new();
    for i in 1..=3 {
        edges.push((0, a(i, 1)));
        edges.push((a(i, 1), a(i, 2)));
        edges.push((a(i, 2), a(i, 3)));
        edges.push((a(i, 2), a(i, 4)));
    }
    let tree = HostTree::new(13, edges).expect("forked star");
    let mut subtrees = Vec::new();
    let mut weights = Vec::new();
    let mut push = |s: Vec<Vertex>, w: u64| {
        subtrees.push(s);
        weights.push(w);
    };
    for i in 1..=3 {
        push(vec![a(i, 3), a(i, 2), a(i, 4)], 1);
    }
    for j in [3, 4] {
        for i in 1..=3 {
            push(vec![a(i, 1), a(i, 2), a(i, j)], 2);
        }
    }
    for i in 1..=3 {
        push(vec![0, a(i, 1), a(i, 2)], 3);
    }
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        push(vec![a(i, 1), 0, a(j, 1)], 4);
    }
    (tree, subtrees, weights)
}

/// Triangle `a_1 a_2 a_3` (ids 0..3, weight 5) and independent `b_1 b_2 b_3`
/// (ids 3..6, weight 4), with `b_i` adjacent to `a_i` and `a_{i+1}` (mod 3).
/// Here `ρ_w = 5` while `γ_w = γ^i_w = 6`.
pub fn example_split_triangle() -> SplitInstance {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    for i in 0..3 {
        edges.push((3 + i, i));
        edges.push((3 + i, (i + 1) % 3));
    }
    let g = WeightedGraph::new(vec![5, 5, 5, 4, 4, 4], &edges).expect("valid");
    validate_split(g, &[0, 1, 2], &[3, 4, 5]).expect("split")
}

/// Three disjoint unit intervals and one covering all of them, unit weights.
pub fn example_nontu_intervals() -> IntervalFamily {
    IntervalFamily::new(vec![
        Interval::new(1, 1, 1),
        Interval::new(2, 2, 1),
        Interval::new(3, 3, 1),
        Interval::new(1, 3, 1),
    ])
    .expect("valid")
}

/// Star with three rays of length 2 (center 0, rays `0–1–2`, `0–3–4`,
/// `0–5–6`); all six edges weighted 1.
pub fn example_nontu_star() -> (HostTree, EdgeWeights) {
    let tree =
        HostTree::new(7, vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).expect("star");
    (tree, EdgeWeights::full(vec![1; 6]))
}
