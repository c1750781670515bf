//! Weighted domination on interval graphs.
//!
//! A forward greedy sweep (by right endpoint) builds a minimum dominating
//! function `f`; the mirrored sweep builds `g`. Walking the right-endpoint
//! enumeration and cutting it into blocks, each anchored at a vertex whose
//! neighborhood `g` covers exactly, yields a dispersed set `I` with
//! `w[I] = |f|`.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{verify_certificate, Certificate, DominationFunction, Vertex, WeightedGraph};
use crate::TheoremViolation;

/// A closed interval `[left, right]` on the integer line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
    pub weight: u64,
}

impl Interval {
    pub fn new(left: i64, right: i64, weight: u64) -> Self {
        Interval {
            left,
            right,
            weight,
        }
    }

    pub fn meets(&self, other: &Interval) -> bool {
        self.left.max(other.left) <= self.right.min(other.right)
    }

    /// Contained in `other` and different from it.
    pub fn strictly_inside(&self, other: &Interval) -> bool {
        other.left <= self.left
            && self.right <= other.right
            && (self.left, self.right) != (other.left, other.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval {index} has left endpoint {left} > right endpoint {right}")]
    Reversed { index: usize, left: i64, right: i64 },
    #[error("interval {0} has weight 0")]
    ZeroWeight(usize),
}

/// A family of weighted closed intervals; interval `i` is vertex `i` of the
/// intersection graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalFamily {
    intervals: Vec<Interval>,
}

impl IntervalFamily {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, IntervalError> {
        for (index, iv) in intervals.iter().enumerate() {
            if iv.left > iv.right {
                return Err(IntervalError::Reversed {
                    index,
                    left: iv.left,
                    right: iv.right,
                });
            }
            if iv.weight == 0 {
                return Err(IntervalError::ZeroWeight(index));
            }
        }
        Ok(IntervalFamily { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn weights(&self) -> Vec<u64> {
        self.intervals.iter().map(|iv| iv.weight).collect()
    }

    /// The intersection graph.
    pub fn graph(&self) -> WeightedGraph {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.intervals[i].meets(&self.intervals[j]) {
                    edges.push((i, j));
                }
            }
        }
        WeightedGraph::new(self.weights(), &edges).expect("validated family")
    }

    fn closed_neighborhoods(&self) -> Vec<Vec<Vertex>> {
        let ivs = &self.intervals;
        (0..ivs.len())
            .map(|i| (0..ivs.len()).filter(|&j| ivs[i].meets(&ivs[j])).collect())
            .collect()
    }

    /// True iff `v` is strictly contained in some other interval.
    pub fn is_non_maximal(&self, v: Vertex) -> bool {
        let iv = &self.intervals[v];
        self.intervals.iter().any(|o| iv.strictly_inside(o))
    }
}

/// Ids sorted by right endpoint, then left endpoint descending, then id.
/// Among intervals sharing a right endpoint the longest comes last, so the
/// forward target is always the latest member of its neighborhood.
pub fn order_by_right_endpoint(fam: &IntervalFamily) -> Vec<Vertex> {
    let ivs = fam.intervals();
    let mut order: Vec<Vertex> = (0..ivs.len()).collect();
    order.sort_by_key(|&i| (ivs[i].right, -ivs[i].left, i));
    order
}

/// The mirrored enumeration: ids sorted by `(left desc, right asc, id)`.
pub fn order_by_left_endpoint_desc(fam: &IntervalFamily) -> Vec<Vertex> {
    let ivs = fam.intervals();
    let mut order: Vec<Vertex> = (0..ivs.len()).collect();
    order.sort_by_key(|&i| (-ivs[i].left, ivs[i].right, i));
    order
}

type TargetKey = (i64, i64, Reverse<Vertex>);

/// Neighbor reaching furthest right: max right, then min left, then max id
/// (the last candidate in the sweep order).
fn forward_target_key(iv: &Interval, id: Vertex) -> TargetKey {
    (-iv.right, iv.left, Reverse(id))
}

/// Neighbor reaching furthest left: min left, then max right, then max id.
fn backward_target_key(iv: &Interval, id: Vertex) -> TargetKey {
    (iv.left, -iv.right, Reverse(id))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyStep {
    /// The lowest interval (in sweep order) whose residual demand is positive.
    pub source: Vertex,
    /// The neighbor of `source` receiving the whole residual.
    pub target: Vertex,
    pub amount: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
}

impl GreedyTrace {
    /// Sum of `amount * χ_target` over all steps.
    pub fn replay(&self, n: usize) -> DominationFunction {
        let mut f = DominationFunction::zeros(n);
        for step in &self.steps {
            f.add(step.target, step.amount);
        }
        f
    }
}

fn greedy(
    fam: &IntervalFamily,
    order: &[Vertex],
    target_key: fn(&Interval, Vertex) -> TargetKey,
) -> (DominationFunction, GreedyTrace) {
    let ivs = fam.intervals();
    let n = ivs.len();
    let nbhd = fam.closed_neighborhoods();
    let mut residual: Vec<u64> = fam.weights();
    let mut f = DominationFunction::zeros(n);
    let mut trace = GreedyTrace::default();

    for &source in order {
        let amount = residual[source];
        if amount == 0 {
            continue;
        }
        let target = *nbhd[source]
            .iter()
            .min_by_key(|&&u| target_key(&ivs[u], u))
            .expect("closed neighborhood contains the source");
        f.add(target, amount);
        trace.steps.push(GreedyStep {
            source,
            target,
            amount,
        });
        for &z in &nbhd[target] {
            residual[z] = residual[z].saturating_sub(amount);
            let covered: u64 = nbhd[z].iter().map(|&y| f.get(y)).sum();
            assert_eq!(
                residual[z],
                ivs[z].weight.saturating_sub(covered),
                "residual drift at interval {z}"
            );
        }
        debug_assert_eq!(residual[source], 0);
    }
    (f, trace)
}

/// Sweeps left to right: each time the lowest interval with positive residual
/// demand is found, its whole residual goes to the neighbor reaching furthest
/// right, and the residuals of that neighbor's closed neighborhood drop.
pub fn forward_greedy(fam: &IntervalFamily) -> (DominationFunction, GreedyTrace) {
    greedy(fam, &order_by_right_endpoint(fam), forward_target_key)
}

/// The same sweep under coordinate negation.
pub fn backward_greedy(fam: &IntervalFamily) -> (DominationFunction, GreedyTrace) {
    greedy(fam, &order_by_left_endpoint_desc(fam), backward_target_key)
}

/// Consecutive runs of the right-endpoint enumeration. Blocks with a
/// representative carry `f[A] = g[A] = w(rep)`; the others carry zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DispersedDecomposition {
    pub blocks: Vec<Vec<Vertex>>,
    /// Block index to its representative vertex.
    pub representatives: BTreeMap<usize, Vertex>,
}

impl DispersedDecomposition {
    /// Indices of blocks carrying a representative.
    pub fn j_blocks(&self) -> Vec<usize> {
        self.representatives.keys().copied().collect()
    }

    /// Indices of zero blocks.
    pub fn k_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|k| !self.representatives.contains_key(k))
            .collect()
    }
}

/// Cuts the right-endpoint enumeration into blocks and picks one
/// representative per nonzero block; the representatives form a dispersed
/// set of weight `|f|`.
///
/// `f` and `g` must come from [`forward_greedy`] and [`backward_greedy`] on
/// `fam`, and `gtrace` from the latter.
pub fn extract_dispersed(
    fam: &IntervalFamily,
    f: &DominationFunction,
    g: &DominationFunction,
    gtrace: &GreedyTrace,
) -> Result<(Vec<Vertex>, DispersedDecomposition), TheoremViolation> {
    let ivs = fam.intervals();
    let n = ivs.len();
    let nbhd = fam.closed_neighborhoods();
    let order = order_by_right_endpoint(fam);
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }

    // z qualifies for v when v is the furthest-left member of N(z) and g
    // covers z exactly
    let qualifies = |z: Vertex, v: Vertex| {
        let leftmost = *nbhd[z]
            .iter()
            .min_by_key(|&&u| backward_target_key(&ivs[u], u))
            .expect("nonempty");
        leftmost == v && g.sum_over(&nbhd[z]) == ivs[z].weight
    };

    let mut dec = DispersedDecomposition::default();
    let mut dispersed = Vec::new();
    let mut p = 0;
    while p < n {
        let v = order[p];
        if g.get(v) == 0 {
            dec.blocks.push(vec![v]);
            p += 1;
            continue;
        }
        let from_trace = gtrace
            .steps
            .iter()
            .filter(|s| s.target == v && qualifies(s.source, v))
            .map(|s| s.source)
            .min();
        let witness = from_trace
            .or_else(|| nbhd[v].iter().copied().find(|&z| qualifies(z, v)))
            .ok_or_else(|| {
                TheoremViolation(format!(
                    "no witness for interval {v} with g({v}) = {}",
                    g.get(v)
                ))
            })?;
        let end = nbhd[witness].iter().map(|&u| pos[u]).max().unwrap_or(p);
        dec.representatives.insert(dec.blocks.len(), witness);
        dec.blocks.push(order[p..=end].to_vec());
        dispersed.push(witness);
        p = end + 1;
    }

    for (k, block) in dec.blocks.iter().enumerate() {
        let (fa, ga) = (f.sum_over(block), g.sum_over(block));
        let expected = dec.representatives.get(&k).map_or(0, |&z| ivs[z].weight);
        if fa != expected || ga != expected {
            return Err(TheoremViolation(format!(
                "block {k} {block:?}: f[A] = {fa}, g[A] = {ga}, expected {expected}"
            )));
        }
    }
    let graph = fam.graph();
    if !graph.is_dispersed(&dispersed).expect("ids in range") {
        return Err(TheoremViolation(format!(
            "extracted set {dispersed:?} is not dispersed"
        )));
    }
    let weight = graph.weight_of(&dispersed);
    if weight != f.size() || weight != g.size() {
        return Err(TheoremViolation(format!(
            "w[I] = {weight}, |f| = {}, |g| = {}",
            f.size(),
            g.size()
        )));
    }
    dispersed.sort_unstable();
    Ok((dispersed, dec))
}

/// Optimal dominating function and dispersed set of equal value.
pub fn solve_interval(fam: &IntervalFamily) -> Result<Certificate, TheoremViolation> {
    let (f, _) = forward_greedy(fam);
    let (g, gtrace) = backward_greedy(fam);
    let (dispersed, _) = extract_dispersed(fam, &f, &g, &gtrace)?;
    let value = f.size();
    let cert = Certificate::new(f, dispersed, value);
    verify_certificate(&fam.graph(), &cert)
        .map_err(|r| TheoremViolation(format!("interval certificate rejected: {r}")))?;
    Ok(cert)
}
