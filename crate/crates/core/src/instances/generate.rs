//! Seeded random instances.
//!
//! All randomness comes from [`Lcg`], a 64-bit linear congruential generator
//! `state = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`
//! seeded with `state = seed`. Each draw advances the state once and uses the
//! high 32 bits; `below(k)` is that value modulo `k`. Outputs are therefore
//! reproducible by any implementation that follows the draw order documented
//! on each generator.

use thiserror::Error;

use crate::graph::{HostTree, Vertex, WeightedGraph};
use crate::interval::{Interval, IntervalFamily};
use crate::split::{validate_split, SplitInstance};
use crate::tree_edge::EdgeWeights;

/// Host tree, subtrees as vertex lists, and their weights.
pub type SubtreeFamily = (HostTree, Vec<Vec<Vertex>>, Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parameter out of range: {0}")]
pub struct ParameterOutOfRange(pub String);

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        u64::from(self.next_u32()) % k
    }

    /// In `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `percent / 100`.
    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }
}

fn positive(name: &str, value: u64) -> Result<(), ParameterOutOfRange> {
    if value == 0 {
        Err(ParameterOutOfRange(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// Per interval: two coordinates in `1..=max_coord` (sorted into `x <= y`),
/// then a weight in `1..=max_w`.
pub fn gen_interval(
    seed: u64,
    n: usize,
    max_coord: u64,
    max_w: u64,
) -> Result<IntervalFamily, ParameterOutOfRange> {
    positive("n", n as u64)?;
    positive("max_coord", max_coord)?;
    positive("max_w", max_w)?;
    let mut rng = Lcg::new(seed);
    let intervals = (0..n)
        .map(|_| {
            let a = rng.range(1, max_coord) as i64;
            let b = rng.range(1, max_coord) as i64;
            let w = rng.range(1, max_w);
            Interval::new(a.min(b), a.max(b), w)
        })
        .collect();
    Ok(IntervalFamily::new(intervals).expect("well-formed by construction"))
}

/// A random recursive tree on `nv` vertices with shuffled labels. Draws: a
/// Fisher–Yates shuffle of `0..nv` (for `i` from `nv-1` down to 1, swap with
/// `below(i+1)`), then for construction index `i` in `1..nv` a parent
/// `below(i)`.
fn random_tree(rng: &mut Lcg, nv: usize) -> HostTree {
    let mut label: Vec<Vertex> = (0..nv).collect();
    for i in (1..nv).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        label.swap(i, j);
    }
    let edges = (1..nv)
        .map(|i| {
            let p = rng.below(i as u64) as usize;
            (label[p], label[i])
        })
        .collect();
    HostTree::new(nv, edges).expect("random recursive tree")
}

/// A tree with `n_edges` edges (see `random_tree`), then per edge: in `F`
/// unless `below(5) == 0`, and if in `F` a weight in `1..=max_w`. If no edge
/// landed in `F`, edge 0 joins with one more weight draw.
pub fn gen_tree(
    seed: u64,
    n_edges: usize,
    max_w: u64,
) -> Result<(HostTree, EdgeWeights), ParameterOutOfRange> {
    positive("n_edges", n_edges as u64)?;
    positive("max_w", max_w)?;
    let mut rng = Lcg::new(seed);
    let tree = random_tree(&mut rng, n_edges + 1);
    let mut weights: Vec<Option<u64>> = (0..n_edges)
        .map(|_| {
            if rng.below(5) == 0 {
                None
            } else {
                Some(rng.range(1, max_w))
            }
        })
        .collect();
    if weights.iter().all(Option::is_none) {
        weights[0] = Some(rng.range(1, max_w));
    }
    Ok((tree, EdgeWeights(weights)))
}

/// Clique `0..n_a`, independent side `n_a..n_a+n_b`. Draws: all weights in
/// id order, then for each independent vertex a round of `chance(p)` per
/// clique vertex, repeated until at least one edge appears (when the clique
/// is nonempty).
pub fn gen_split(
    seed: u64,
    n_a: usize,
    n_b: usize,
    edge_prob_percent: u64,
    max_w: u64,
) -> Result<SplitInstance, ParameterOutOfRange> {
    positive("n_a + n_b", (n_a + n_b) as u64)?;
    positive("max_w", max_w)?;
    if edge_prob_percent > 100 {
        return Err(ParameterOutOfRange(
            "edge_prob_percent must be in 0..=100".into(),
        ));
    }
    if edge_prob_percent == 0 && n_a > 0 && n_b > 0 {
        return Err(ParameterOutOfRange(
            "edge_prob_percent 0 cannot give every independent vertex a neighbor".into(),
        ));
    }
    let mut rng = Lcg::new(seed);
    let n = n_a + n_b;
    let weights: Vec<u64> = (0..n).map(|_| rng.range(1, max_w)).collect();
    let mut edges = Vec::new();
    for u in 0..n_a {
        for v in u + 1..n_a {
            edges.push((u, v));
        }
    }
    for b in n_a..n {
        loop {
            let hits: Vec<Vertex> = (0..n_a).filter(|_| rng.chance(edge_prob_percent)).collect();
            if !hits.is_empty() || n_a == 0 {
                edges.extend(hits.into_iter().map(|a| (a, b)));
                break;
            }
        }
    }
    let g = WeightedGraph::new(weights, &edges).expect("valid");
    let a: Vec<Vertex> = (0..n_a).collect();
    let b: Vec<Vertex> = (n_a..n).collect();
    Ok(validate_split(g, &a, &b).expect("split by construction"))
}

/// A host tree on `n_tree` vertices (see `random_tree`), then per subtree: a
/// start vertex `below(n_tree)`, a target size `range(1, n_tree)`, growth by
/// picking `below(len)` from the ascending list of outside neighbors until
/// the size is reached, and finally a weight in `1..=max_w`.
pub fn gen_subtrees(
    seed: u64,
    n_tree: usize,
    n_subtrees: usize,
    max_w: u64,
) -> Result<SubtreeFamily, ParameterOutOfRange> {
    positive("n_tree", n_tree as u64)?;
    positive("n_subtrees", n_subtrees as u64)?;
    positive("max_w", max_w)?;
    let mut rng = Lcg::new(seed);
    let tree = random_tree(&mut rng, n_tree);
    let mut subtrees = Vec::with_capacity(n_subtrees);
    let mut weights = Vec::with_capacity(n_subtrees);
    for _ in 0..n_subtrees {
        let start = rng.below(n_tree as u64) as usize;
        let size = rng.range(1, n_tree as u64) as usize;
        let mut inside = vec![false; n_tree];
        inside[start] = true;
        let mut members = vec![start];
        while members.len() < size {
            let mut frontier: Vec<Vertex> = members
                .iter()
                .flat_map(|&x| tree.incident(x).iter().map(|&(y, _)| y))
                .filter(|&y| !inside[y])
                .collect();
            frontier.sort_unstable();
            frontier.dedup();
            let pick = frontier[rng.below(frontier.len() as u64) as usize];
            inside[pick] = true;
            members.push(pick);
        }
        subtrees.push(members);
        weights.push(rng.range(1, max_w));
    }
    Ok((tree, subtrees, weights))
}

/// `n` pairwise non-nested intervals: both endpoint sequences strictly
/// increasing. Draws per interval: a left step `range(1, 2)` and a length
/// `range(0, 3)`, with the right endpoint pushed past the previous one when
/// needed; weights in `1..=max_w`.
pub fn gen_containment_free_intervals(
    seed: u64,
    n: usize,
    max_w: u64,
) -> Result<IntervalFamily, ParameterOutOfRange> {
    positive("n", n as u64)?;
    positive("max_w", max_w)?;
    let mut rng = Lcg::new(seed);
    let mut left = 0i64;
    let mut prev_right = i64::MIN;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        left += rng.range(1, 2) as i64;
        let right = (left + rng.range(0, 3) as i64).max(prev_right + 1);
        prev_right = right;
        out.push(Interval::new(left, right, rng.range(1, max_w)));
    }
    Ok(IntervalFamily::new(out).expect("well-formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_intersection_graph;

    #[test]
    fn lcg_is_fixed() {
        let mut rng = Lcg::new(0);
        // state_1 = INCREMENT
        assert_eq!(rng.next_u32(), (Lcg::INCREMENT >> 32) as u32);
        let mut a = Lcg::new(42);
        let mut b = Lcg::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u32(), b.next_u32());
        }
    }

    #[test]
    fn determinism() {
        assert_eq!(gen_interval(7, 6, 12, 5), gen_interval(7, 6, 12, 5));
        assert_eq!(gen_tree(7, 6, 5), gen_tree(7, 6, 5));
        assert_eq!(gen_split(7, 3, 4, 50, 5), gen_split(7, 3, 4, 50, 5));
        assert_eq!(gen_subtrees(7, 6, 5, 3), gen_subtrees(7, 6, 5, 3));
    }

    #[test]
    fn shapes() {
        assert_eq!(gen_interval(3, 1, 12, 5).unwrap().len(), 1);
        let (tree, w) = gen_tree(3, 9, 5).unwrap();
        assert_eq!(tree.edges().len(), 9);
        assert!(w.0.iter().any(Option::is_some));
        let s = gen_split(3, 3, 5, 30, 5).unwrap();
        assert!(s.independent().iter().all(|&b| s.graph().degree(b) > 0));
        let s = gen_split(3, 0, 3, 30, 5).unwrap();
        assert_eq!(s.graph().edges().len(), 0);
        for seed in 0..50 {
            let (host, subtrees, weights) = gen_subtrees(seed, 7, 6, 3).unwrap();
            assert!(build_intersection_graph(&host, &subtrees, &weights).is_ok());
        }
    }

    #[test]
    fn containment_free() {
        for seed in 0..100 {
            let fam = gen_containment_free_intervals(seed, 8, 3).unwrap();
            assert!((0..fam.len()).all(|v| !fam.is_non_maximal(v)));
            let ivs = fam.intervals();
            assert!(ivs
                .windows(2)
                .all(|p| p[0].left < p[1].left && p[0].right < p[1].right));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_interval(0, 0, 12, 5).is_err());
        assert!(gen_interval(0, 3, 0, 5).is_err());
        assert!(gen_tree(0, 0, 5).is_err());
        assert!(gen_split(0, 2, 2, 101, 5).is_err());
        assert!(gen_split(0, 2, 2, 0, 5).is_err());
        assert!(gen_subtrees(0, 0, 2, 5).is_err());
    }
}
