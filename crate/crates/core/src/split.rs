//! Split graphs: a clique `A` plus an independent set `B`.
//!
//! A cheapest function dominating `B` can be moved onto `A`. If its size
//! already reaches the heaviest clique weight it dominates everything;
//! otherwise topping up the heaviest clique vertex does, at cost `max w(A)`.
//! Either way the value is attained by dominating an independent set (`B` or
//! a single clique vertex), so `γ_w = γ^i_w`.

use thiserror::Error;

use crate::graph::{DominationFunction, Vertex, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("clique side vertices {0} and {1} are not adjacent")]
    NotAClique(Vertex, Vertex),
    #[error("independent side vertices {0} and {1} are adjacent")]
    NotIndependent(Vertex, Vertex),
    #[error("clique and independent sides do not partition the vertex set")]
    NotAPartition,
    #[error("independent-side vertex {0} has no neighbor")]
    IsolatedBVertex(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Clique,
    Independent,
}

/// A graph together with a verified clique/independent partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitInstance {
    graph: WeightedGraph,
    clique: Vec<Vertex>,
    independent: Vec<Vertex>,
}

impl SplitInstance {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn clique(&self) -> &[Vertex] {
        &self.clique
    }

    pub fn independent(&self) -> &[Vertex] {
        &self.independent
    }

    pub fn side(&self, v: Vertex) -> Side {
        if self.clique.binary_search(&v).is_ok() {
            Side::Clique
        } else {
            Side::Independent
        }
    }
}

pub fn validate_split(
    graph: WeightedGraph,
    a: &[Vertex],
    b: &[Vertex],
) -> Result<SplitInstance, SplitError> {
    let n = graph.len();
    let mut seen = vec![false; n];
    for &v in a.iter().chain(b) {
        if v >= n || seen[v] {
            return Err(SplitError::NotAPartition);
        }
        seen[v] = true;
    }
    if seen.iter().any(|&s| !s) {
        return Err(SplitError::NotAPartition);
    }
    let mut clique = a.to_vec();
    let mut independent = b.to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    for (i, &u) in clique.iter().enumerate() {
        if let Some(&v) = clique[i + 1..].iter().find(|&&v| !graph.are_adjacent(u, v)) {
            return Err(SplitError::NotAClique(u, v));
        }
    }
    for (i, &u) in independent.iter().enumerate() {
        if let Some(&v) = independent[i + 1..]
            .iter()
            .find(|&&v| graph.are_adjacent(u, v))
        {
            return Err(SplitError::NotIndependent(u, v));
        }
    }
    Ok(SplitInstance {
        graph,
        clique,
        independent,
    })
}

/// Depth-first search over values on the clique side.
struct CoverSearch<'a> {
    clique: &'a [Vertex],
    /// For each clique position, the independent positions it covers.
    covers: Vec<Vec<usize>>,
    /// Last clique position able to cover each independent vertex.
    last: Vec<usize>,
    residual: Vec<i64>,
    cap: i64,
    values: Vec<u64>,
    best: u64,
    best_values: Vec<u64>,
}

impl CoverSearch<'_> {
    fn run(&mut self, pos: usize, cost: u64) {
        let unmet = self.residual.iter().copied().max().unwrap_or(0).max(0) as u64;
        if unmet == 0 {
            if cost < self.best {
                self.best = cost;
                self.best_values = self.values.clone();
            }
            return;
        }
        if pos == self.clique.len() || cost + unmet >= self.best {
            return;
        }
        let covered = &self.covers[pos];
        let lo = covered
            .iter()
            .filter(|&&b| self.last[b] == pos)
            .map(|&b| self.residual[b].max(0))
            .max()
            .unwrap_or(0);
        let hi = covered
            .iter()
            .map(|&b| self.residual[b])
            .max()
            .unwrap_or(0)
            .clamp(0, self.cap);
        for value in (lo..=hi).rev() {
            for &b in &self.covers[pos] {
                self.residual[b] -= value;
            }
            self.values[pos] = value as u64;
            self.run(pos + 1, cost + value as u64);
            for &b in &self.covers[pos] {
                self.residual[b] += value;
            }
        }
        self.values[pos] = 0;
    }
}

/// A cheapest function supported on the clique that dominates every
/// independent-side vertex. With an empty clique the answer is `g = w` on
/// the independent side.
pub fn min_cover_b(inst: &SplitInstance) -> Result<DominationFunction, SplitError> {
    let g = &inst.graph;
    let n = g.len();
    if inst.clique.is_empty() {
        let mut f = DominationFunction::zeros(n);
        for &b in &inst.independent {
            f.set(b, g.weight(b));
        }
        return Ok(f);
    }
    if let Some(&b) = inst.independent.iter().find(|&&b| g.degree(b) == 0) {
        return Err(SplitError::IsolatedBVertex(b));
    }
    let bpos = |v: Vertex| inst.independent.binary_search(&v).ok();
    let covers: Vec<Vec<usize>> = inst
        .clique
        .iter()
        .map(|&a| g.neighbors(a).iter().filter_map(|&v| bpos(v)).collect())
        .collect();
    let mut last = vec![0; inst.independent.len()];
    for (pos, list) in covers.iter().enumerate() {
        for &b in list {
            last[b] = pos;
        }
    }
    let residual: Vec<i64> = inst
        .independent
        .iter()
        .map(|&b| g.weight(b) as i64)
        .collect();
    let cap = residual.iter().copied().max().unwrap_or(0);

    // incumbent: walk B, giving each still-uncovered b its full weight on its
    // smallest neighbor
    let mut seed = vec![0u64; inst.clique.len()];
    let mut left = residual.clone();
    for (bi, &b) in inst.independent.iter().enumerate() {
        if left[bi] > 0 {
            let a = g.neighbors(b)[0];
            let pos = inst.clique.binary_search(&a).expect("B only meets A");
            let add = left[bi];
            seed[pos] += add as u64;
            for &c in &covers[pos] {
                left[c] -= add;
            }
        }
    }
    let mut search = CoverSearch {
        clique: &inst.clique,
        covers,
        last,
        residual,
        cap,
        values: vec![0; inst.clique.len()],
        best: seed.iter().sum::<u64>() + 1,
        best_values: seed.clone(),
    };
    search.run(0, 0);
    let mut f = DominationFunction::zeros(n);
    for (pos, &a) in inst.clique.iter().enumerate() {
        f.set(a, search.best_values[pos]);
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    /// `γ_w = γ^i_w`.
    pub value: u64,
    pub dominating: DominationFunction,
    /// An independent set whose cheapest domination costs `value`.
    pub witness_independent: Vec<Vertex>,
    pub witness_cost: u64,
}

pub fn solve_split(inst: &SplitInstance) -> Result<SplitResult, SplitError> {
    let g = min_cover_b(inst)?;
    let cover = g.size();
    let heaviest = inst
        .clique
        .iter()
        .map(|&a| (inst.graph.weight(a), std::cmp::Reverse(a)))
        .max();
    match heaviest {
        Some((w, std::cmp::Reverse(a))) if cover < w => {
            let mut f = g;
            f.add(a, w - cover);
            Ok(SplitResult {
                value: w,
                dominating: f,
                witness_independent: vec![a],
                witness_cost: w,
            })
        }
        _ => Ok(SplitResult {
            value: cover,
            dominating: g,
            witness_independent: inst.independent.clone(),
            witness_cost: cover,
        }),
    }
}
