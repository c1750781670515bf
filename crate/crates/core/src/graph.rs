//! Weighted graphs, domination functions and optimality certificates.
//!
//! Vertices are dense ids `0..n` in input order. A *closed* neighborhood
//! `N(v)` always contains `v` itself; every predicate in this module uses
//! closed neighborhoods.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Dense vertex id.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} has weight 0; instance weights must be at least 1")]
    ZeroWeight(Vertex),
    #[error("subtree {0} is empty")]
    EmptySubtree(usize),
    #[error("subtree {0} does not induce a connected subgraph of the host tree")]
    DisconnectedSubtree(usize),
    #[error("expected {expected} weights, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("host tree is invalid: {0}")]
    NotATree(String),
}

/// An undirected simple graph with positive integer vertex weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<Vec<Vertex>>,
    weights: Vec<u64>,
}

impl WeightedGraph {
    /// Builds a graph from per-vertex weights and an edge list. Parallel
    /// edges collapse; self-loops and zero weights are rejected.
    pub fn new(weights: Vec<u64>, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let n = weights.len();
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(GraphError::ZeroWeight(v));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(WeightedGraph { adj, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: Vertex) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Open neighborhood, sorted ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn check_all(&self, set: &[Vertex]) -> Result<(), GraphError> {
        set.iter().try_for_each(|&v| self.check(v))
    }

    /// `N(v)`: `v` together with its neighbors, sorted ascending.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        self.check(v)?;
        Ok(self.closed_neighborhood_unchecked(v))
    }

    pub(crate) fn closed_neighborhood_unchecked(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let split = self.adj[v].partition_point(|&u| u < v);
        out.extend_from_slice(&self.adj[v][..split]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][split..]);
        out
    }

    /// Shortest-path length in edges, `None` when `u` and `v` are disconnected.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(Some(0));
        }
        let mut dist = vec![usize::MAX; self.len()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Ok(Some(dist[y]));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// True iff every two distinct members are at distance at least 3,
    /// i.e. their closed neighborhoods are pairwise disjoint.
    pub fn is_dispersed(&self, set: &[Vertex]) -> Result<bool, GraphError> {
        self.check_all(set)?;
        Ok(self.first_close_pair(set).is_none())
    }

    fn first_close_pair(&self, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
        let mut owner = vec![usize::MAX; self.len()];
        let mut members = set.to_vec();
        members.sort_unstable();
        members.dedup();
        for &s in &members {
            for x in self.closed_neighborhood_unchecked(s) {
                if owner[x] != usize::MAX {
                    return Some((owner[x], s));
                }
                owner[x] = s;
            }
        }
        None
    }

    /// `f[A]` with every member of `a` checked against the graph.
    pub fn set_sum(&self, f: &DominationFunction, a: &[Vertex]) -> Result<u64, GraphError> {
        self.check_all(a)?;
        Ok(f.sum_over(a))
    }

    /// `f[N(v)]`.
    pub fn coverage(&self, f: &DominationFunction, v: Vertex) -> u64 {
        f.get(v) + self.adj[v].iter().map(|&u| f.get(u)).sum::<u64>()
    }

    /// True iff `f[N(u)] >= w(u)` for every `u` in `demanded`.
    pub fn is_w_dominating(
        &self,
        f: &DominationFunction,
        demanded: &[Vertex],
    ) -> Result<bool, GraphError> {
        self.check_all(demanded)?;
        Ok(demanded
            .iter()
            .all(|&u| self.coverage(f, u) >= self.weights[u]))
    }

    /// Total weight `w[S]` of a vertex set (duplicates counted once).
    pub fn weight_of(&self, set: &[Vertex]) -> u64 {
        let mut members = set.to_vec();
        members.sort_unstable();
        members.dedup();
        members.iter().map(|&v| self.weights[v]).sum()
    }
}

/// A nonnegative integer labeling of vertices. Ids past the stored length
/// read as zero, so two functions compare equal when they agree on every id.
#[derive(Debug, Clone, Default)]
pub struct DominationFunction {
    values: Vec<u64>,
}

impl DominationFunction {
    pub fn zeros(n: usize) -> Self {
        DominationFunction { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<u64>) -> Self {
        DominationFunction { values }
    }

    /// The unit indicator `amount * χ_v` on `n` vertices.
    pub fn indicator(n: usize, v: Vertex, amount: u64) -> Self {
        let mut f = Self::zeros(n.max(v + 1));
        f.values[v] = amount;
        f
    }

    pub fn get(&self, v: Vertex) -> u64 {
        self.values.get(v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Vertex, value: u64) {
        if v >= self.values.len() {
            self.values.resize(v + 1, 0);
        }
        self.values[v] = value;
    }

    pub fn add(&mut self, v: Vertex, amount: u64) {
        let cur = self.get(v);
        self.set(v, cur + amount);
    }

    /// `|f|`.
    pub fn size(&self) -> u64 {
        self.values.iter().sum()
    }

    /// `f[A]`; ids outside the stored range contribute zero.
    pub fn sum_over(&self, a: &[Vertex]) -> u64 {
        a.iter().map(|&v| self.get(v)).sum()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Stored length (an upper bound on the support, not the graph order).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero entries in ascending id order.
    pub fn support(&self) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(v, &x)| (v, x))
    }
}

impl PartialEq for DominationFunction {
    fn eq(&self, other: &Self) -> bool {
        let n = self.values.len().max(other.values.len());
        (0..n).all(|v| self.get(v) == other.get(v))
    }
}

impl Eq for DominationFunction {}

/// A dominating function and a dispersed set of equal value. By weak
/// duality (`w[I] <= |f|` for any dispersed `I` and dominating `f`) a valid
/// certificate shows `γ_w = ρ_w = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub dominating: DominationFunction,
    /// Sorted ascending.
    pub dispersed: Vec<Vertex>,
    pub value: u64,
}

impl Certificate {
    pub fn new(dominating: DominationFunction, mut dispersed: Vec<Vertex>, value: u64) -> Self {
        dispersed.sort_unstable();
        dispersed.dedup();
        Certificate {
            dominating,
            dispersed,
            value,
        }
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// The certificate mentions a vertex the graph does not have.
    UnknownVertex(Vertex),
    NotDominating {
        vertex: Vertex,
        covered: u64,
        demand: u64,
    },
    NotDispersed(Vertex, Vertex),
    ValueMismatch {
        value: u64,
        dominating_size: u64,
        dispersed_weight: u64,
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::UnknownVertex(v) => write!(f, "certificate mentions unknown vertex {v}"),
            Rejection::NotDominating {
                vertex,
                covered,
                demand,
            } => write!(
                f,
                "not dominating: vertex {vertex} receives {covered} < weight {demand}"
            ),
            Rejection::NotDispersed(u, v) => {
                write!(f, "not dispersed: vertices {u} and {v} are within distance 2")
            }
            Rejection::ValueMismatch {
                value,
                dominating_size,
                dispersed_weight,
            } => write!(
                f,
                "value mismatch: claimed {value}, |f| = {dominating_size}, w[I] = {dispersed_weight}"
            ),
        }
    }
}

/// Checks that `c` proves `γ_w(g) = ρ_w(g) = c.value`.
pub fn verify_certificate(g: &WeightedGraph, c: &Certificate) -> Result<(), Rejection> {
    let n = g.len();
    if let Some((v, _)) = c.dominating.support().find(|&(v, _)| v >= n) {
        return Err(Rejection::UnknownVertex(v));
    }
    if let Some(&v) = c.dispersed.iter().find(|&&v| v >= n) {
        return Err(Rejection::UnknownVertex(v));
    }
    for v in 0..n {
        let covered = g.coverage(&c.dominating, v);
        if covered < g.weight(v) {
            return Err(Rejection::NotDominating {
                vertex: v,
                covered,
                demand: g.weight(v),
            });
        }
    }
    if let Some((u, v)) = g.first_close_pair(&c.dispersed) {
        return Err(Rejection::NotDispersed(u, v));
    }
    let dominating_size = c.dominating.size();
    let dispersed_weight = g.weight_of(&c.dispersed);
    if dominating_size != c.value || dispersed_weight != c.value {
        return Err(Rejection::ValueMismatch {
            value: c.value,
            dominating_size,
            dispersed_weight,
        });
    }
    Ok(())
}

/// A tree on vertices `0..n`; edge ids are positions in the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostTree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, usize)>>,
}

impl HostTree {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NotATree("no vertices".into()));
        }
        if edges.len() != n - 1 {
            return Err(GraphError::NotATree(format!(
                "{} vertices need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = (find(&mut comp, u), find(&mut comp, v));
            if a == b {
                return Err(GraphError::NotATree(format!("edge {id} closes a cycle")));
            }
            comp[a] = b;
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Ok(HostTree { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs, in edge-list order.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adj[v]
    }
}

/// The intersection graph of a family of subtrees of `host`: one vertex per
/// subtree, adjacent iff the subtrees share a host vertex.
pub fn build_intersection_graph(
    host: &HostTree,
    subtrees: &[Vec<Vertex>],
    weights: &[u64],
) -> Result<WeightedGraph, GraphError> {
    if subtrees.len() != weights.len() {
        return Err(GraphError::LengthMismatch {
            expected: subtrees.len(),
            got: weights.len(),
        });
    }
    let n = host.vertex_count();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut inside = vec![false; n];
    for (i, subtree) in subtrees.iter().enumerate() {
        if subtree.is_empty() {
            return Err(GraphError::EmptySubtree(i));
        }
        if let Some(&v) = subtree.iter().find(|&&v| v >= n) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut members = subtree.clone();
        members.sort_unstable();
        members.dedup();
        for &v in &members {
            inside[v] = true;
        }
        // connectivity inside the host, restricted to the subset
        let mut seen = 1;
        let mut stack = vec![members[0]];
        let mut visited = vec![false; n];
        visited[members[0]] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in host.incident(x) {
                if inside[y] && !visited[y] {
                    visited[y] = true;
                    seen += 1;
                    stack.push(y);
                }
            }
        }
        for &v in &members {
            inside[v] = false;
            holders[v].push(i);
        }
        if seen != members.len() {
            return Err(GraphError::DisconnectedSubtree(i));
        }
    }
    let mut edges = Vec::new();
    for list in &holders {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                edges.push((i, j));
            }
        }
    }
    WeightedGraph::new(weights.to_vec(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::fixtures;

    fn split_triangle_graph() -> WeightedGraph {
        fixtures::example_split_triangle().graph().clone()
    }

    // split triangle ids: a_1..a_3 = 0..2, b_1..b_3 = 3..5
    const A1: usize = 0;
    const A2: usize = 1;
    const B1: usize = 3;
    const B2: usize = 4;

    #[test]
    fn closed_neighborhoods() {
        let g = WeightedGraph::new(vec![1, 1], &[]).unwrap();
        assert_eq!(g.closed_neighborhood(1).unwrap(), vec![1]);
        let g = split_triangle_graph();
        assert_eq!(g.closed_neighborhood(B1).unwrap(), vec![A1, A2, B1]);
        assert_eq!(g.closed_neighborhood(A1).unwrap(), vec![0, 1, 2, 3, 5]);
        assert_eq!(g.closed_neighborhood(6), Err(GraphError::UnknownVertex(6)));
    }

    #[test]
    fn distances() {
        let g = split_triangle_graph();
        assert_eq!(g.distance(2, 2).unwrap(), Some(0));
        assert_eq!(g.distance(A1, B2).unwrap(), Some(2));
        let g = WeightedGraph::new(vec![1, 1], &[]).unwrap();
        assert_eq!(g.distance(0, 1).unwrap(), None);
        assert!(g.distance(0, 9).is_err());
    }

    #[test]
    fn dispersed_sets() {
        let g = split_triangle_graph();
        assert!(g.is_dispersed(&[]).unwrap());
        assert!(g.is_dispersed(&[B2]).unwrap());
        assert!(!g.is_dispersed(&[A1, B2]).unwrap());
        let (host, subtrees, weights) = fixtures::example_forked_star();
        let g1 = build_intersection_graph(&host, &subtrees, &weights).unwrap();
        assert!(g1.is_dispersed(&[0, 1, 2]).unwrap());
        assert!(g1.is_dispersed(&[7]).unwrap());
        assert!(g.is_dispersed(&[17]).is_err());
    }

    #[test]
    fn set_sums() {
        let g = WeightedGraph::new(vec![1; 4], &[]).unwrap();
        let ones = DominationFunction::from_values(vec![1; 4]);
        assert_eq!(g.set_sum(&ones, &[]).unwrap(), 0);
        assert_eq!(g.set_sum(&ones, &[0, 1, 2, 3]).unwrap(), 4);
        let iv3 = fixtures::iv3().graph();
        let f = DominationFunction::from_values(vec![0, 3, 2]);
        assert_eq!(iv3.set_sum(&f, &[0, 1]).unwrap(), 3);
        assert!(iv3.set_sum(&f, &[3]).is_err());
    }

    #[test]
    fn domination_predicate() {
        let g = split_triangle_graph();
        let all: Vec<usize> = (0..6).collect();
        let copy = DominationFunction::from_values(g.weights().to_vec());
        assert!(g.is_w_dominating(&copy, &all).unwrap());
        assert!(!g
            .is_w_dominating(&DominationFunction::zeros(6), &[B1])
            .unwrap());
        let f = DominationFunction::from_values(vec![2, 2, 2, 0, 0, 0]);
        assert!(g.is_w_dominating(&f, &all).unwrap());
        // each a_i sees 6 >= 5, each b_i sees 4 >= 4
        let f = DominationFunction::from_values(vec![2, 2, 1, 0, 0, 0]);
        assert!(!g.is_w_dominating(&f, &all).unwrap());
    }

    #[test]
    fn certificates() {
        let g = WeightedGraph::new(vec![7], &[]).unwrap();
        let c = Certificate::new(DominationFunction::from_values(vec![7]), vec![0], 7);
        assert_eq!(verify_certificate(&g, &c), Ok(()));

        let g = split_triangle_graph();
        let c = Certificate::new(
            DominationFunction::from_values(vec![2, 2, 2, 0, 0, 0]),
            vec![A1],
            6,
        );
        assert!(matches!(
            verify_certificate(&g, &c),
            Err(Rejection::ValueMismatch {
                dispersed_weight: 5,
                ..
            })
        ));

        let iv3 = fixtures::iv3().graph();
        let c = Certificate::new(
            DominationFunction::from_values(vec![0, 3, 2]),
            vec![0, 2],
            5,
        );
        assert_eq!(verify_certificate(&iv3, &c), Ok(()));
        let c = Certificate::new(
            DominationFunction::from_values(vec![0, 3, 2]),
            vec![0, 1],
            5,
        );
        assert!(matches!(
            verify_certificate(&iv3, &c),
            Err(Rejection::NotDispersed(0, 1))
        ));
        let c = Certificate::new(DominationFunction::from_values(vec![0, 2, 2]), vec![0], 3);
        assert!(matches!(
            verify_certificate(&iv3, &c),
            Err(Rejection::NotDominating { vertex: 0, .. })
        ));
        let c = Certificate::new(DominationFunction::from_values(vec![0, 3, 2]), vec![9], 5);
        assert_eq!(
            verify_certificate(&iv3, &c),
            Err(Rejection::UnknownVertex(9))
        );
    }

    #[test]
    fn intersection_graphs() {
        let host = HostTree::new(2, vec![(0, 1)]).unwrap();
        let g = build_intersection_graph(&host, &[vec![0], vec![1]], &[1, 1]).unwrap();
        assert_eq!((g.len(), g.edges().len()), (2, 0));
        let g = build_intersection_graph(&host, &[vec![0, 1], vec![1]], &[1, 1]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);

        let path = HostTree::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            build_intersection_graph(&path, &[vec![0, 2]], &[1]),
            Err(GraphError::DisconnectedSubtree(0))
        );
        assert_eq!(
            build_intersection_graph(&path, &[vec![]], &[1]),
            Err(GraphError::EmptySubtree(0))
        );
        assert!(build_intersection_graph(&path, &[vec![0]], &[0]).is_err());

        let (host, subtrees, weights) = fixtures::example_forked_star();
        let g = build_intersection_graph(&host, &subtrees, &weights).unwrap();
        assert_eq!(g.len(), 15);
    }

    #[test]
    fn host_tree_validation() {
        assert!(HostTree::new(3, vec![(0, 1)]).is_err());
        assert!(HostTree::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(HostTree::new(2, vec![(0, 0)]).is_err());
        assert!(HostTree::new(1, vec![]).is_ok());
    }

    #[test]
    fn domination_function_equality_ignores_trailing_zeros() {
        let a = DominationFunction::from_values(vec![0, 3, 0, 0]);
        let b = DominationFunction::indicator(2, 1, 3);
        assert_eq!(a, b);
        assert_eq!(a.support().collect::<Vec<_>>(), vec![(1, 3)]);
    }
}
