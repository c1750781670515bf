//! Weighted domination on the line graph of a set of edges of a tree.
//!
//! The edges of each component are oriented away from a root. A bottom-up
//! pass by height sets each edge just high enough to dominate its sons, a
//! single correction at the root dominates the root edges, and a layered
//! deletion from the top extracts a dispersed set of the same weight.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{
    verify_certificate, Certificate, DominationFunction, GraphError, HostTree, Vertex,
    WeightedGraph,
};
use crate::TheoremViolation;

/// Weights on a subset `F` of the host tree's edges, indexed by host edge id;
/// `None` marks an edge outside `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeights(pub Vec<Option<u64>>);

impl EdgeWeights {
    /// Every host edge in `F`.
    pub fn full(weights: Vec<u64>) -> Self {
        EdgeWeights(weights.into_iter().map(Some).collect())
    }

    /// Host edge ids in `F`, ascending. Position in this list is the vertex
    /// id in the line graph.
    pub fn members(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&e| self.0[e].is_some()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("the weighted edge set is empty")]
    EmptyEdgeSet,
    #[error("edge weights cover {got} edges, host tree has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("edge {0} has weight 0")]
    ZeroWeight(usize),
    #[error("vertex {0} is not in this component")]
    RootNotInComponent(Vertex),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

fn check_weights(tree: &HostTree, f: &EdgeWeights) -> Result<(), TreeError> {
    if f.0.len() != tree.edges().len() {
        return Err(TreeError::LengthMismatch {
            expected: tree.edges().len(),
            got: f.0.len(),
        });
    }
    if let Some(e) = (0..f.0.len()).find(|&e| f.0[e] == Some(0)) {
        return Err(TreeError::ZeroWeight(e));
    }
    Ok(())
}

/// The line graph of `F`: one vertex per member edge (ascending host id),
/// adjacent iff the edges share an endpoint.
pub fn line_graph(tree: &HostTree, f: &EdgeWeights) -> Result<WeightedGraph, TreeError> {
    check_weights(tree, f)?;
    let members = f.members();
    let mut line_id = vec![usize::MAX; tree.edges().len()];
    for (i, &e) in members.iter().enumerate() {
        line_id[e] = i;
    }
    let mut edges = Vec::new();
    for v in 0..tree.vertex_count() {
        let at: Vec<usize> = tree
            .incident(v)
            .iter()
            .filter(|&&(_, e)| line_id[e] != usize::MAX)
            .map(|&(_, e)| line_id[e])
            .collect();
        for (a, &x) in at.iter().enumerate() {
            for &y in &at[a + 1..] {
                edges.push((x, y));
            }
        }
    }
    let weights = members.iter().map(|&e| f.0[e].expect("member")).collect();
    WeightedGraph::new(weights, &edges).map_err(|err| match err {
        GraphError::ZeroWeight(v) => TreeError::ZeroWeight(members[v]),
        other => unreachable!("line graph construction: {other}"),
    })
}

/// One connected component of `F`, with every edge oriented away from the
/// root. Local edge `i` is the `i`-th member edge in ascending line-graph id
/// order; local vertices are host vertices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedEdgeTree {
    host_vertices: Vec<Vertex>,
    ends: Vec<(usize, usize)>,
    weights: Vec<u64>,
    line_ids: Vec<usize>,
    root: usize,
    tail: Vec<usize>,
    head: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edge: Vec<Option<usize>>,
    height: Vec<usize>,
    depth: Vec<usize>,
}

impl RootedEdgeTree {
    fn new(
        host_vertices: Vec<Vertex>,
        ends: Vec<(usize, usize)>,
        weights: Vec<u64>,
        line_ids: Vec<usize>,
    ) -> Self {
        let k = host_vertices.len();
        let m = ends.len();
        let mut t = RootedEdgeTree {
            host_vertices,
            ends,
            weights,
            line_ids,
            root: 0,
            tail: vec![0; m],
            head: vec![0; m],
            out_edges: vec![Vec::new(); k],
            in_edge: vec![None; k],
            height: vec![0; m],
            depth: vec![0; m],
        };
        t.orient(0);
        t
    }

    fn orient(&mut self, root: usize) {
        let k = self.host_vertices.len();
        let m = self.ends.len();
        let mut incident = vec![Vec::new(); k];
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            incident[a].push(e);
            incident[b].push(e);
        }
        self.root = root;
        self.out_edges = vec![Vec::new(); k];
        self.in_edge = vec![None; k];
        let mut visited = vec![false; k];
        visited[root] = true;
        let mut preorder = Vec::with_capacity(m);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &e in &incident[x] {
                let (a, b) = self.ends[e];
                let y = if a == x { b } else { a };
                if !visited[y] {
                    visited[y] = true;
                    self.tail[e] = x;
                    self.head[e] = y;
                    self.out_edges[x].push(e);
                    self.in_edge[y] = Some(e);
                    preorder.push(e);
                    stack.push(y);
                }
            }
        }
        for list in &mut self.out_edges {
            list.sort_unstable();
        }
        for &e in &preorder {
            self.depth[e] = match self.in_edge[self.tail[e]] {
                Some(p) => self.depth[p] + 1,
                None => 0,
            };
        }
        for &e in preorder.iter().rev() {
            self.height[e] = self.out_edges[self.head[e]]
                .iter()
                .map(|&c| self.height[c] + 1)
                .max()
                .unwrap_or(0);
        }
    }

    /// Re-roots at host vertex `root`.
    pub fn rooted_at(mut self, root: Vertex) -> Result<Self, TreeError> {
        let local = self
            .host_vertices
            .binary_search(&root)
            .map_err(|_| TreeError::RootNotInComponent(root))?;
        self.orient(local);
        Ok(self)
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// The root as a host vertex.
    pub fn root(&self) -> Vertex {
        self.host_vertices[self.root]
    }

    pub fn host_vertices(&self) -> &[Vertex] {
        &self.host_vertices
    }

    pub fn weight(&self, e: usize) -> u64 {
        self.weights[e]
    }

    pub fn line_id(&self, e: usize) -> usize {
        self.line_ids[e]
    }

    pub fn height(&self, e: usize) -> usize {
        self.height[e]
    }

    pub fn depth(&self, e: usize) -> usize {
        self.depth[e]
    }

    /// Oriented edge `(tail, head)` as host vertices.
    pub fn oriented(&self, e: usize) -> (Vertex, Vertex) {
        (
            self.host_vertices[self.tail[e]],
            self.host_vertices[self.head[e]],
        )
    }

    /// `A(v)`: edges leaving local vertex `v`.
    fn out_of(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Root edges `A(r)`.
    pub fn root_edges(&self) -> &[usize] {
        &self.out_edges[self.root]
    }

    /// Sons of `e`: the edges leaving its head.
    pub fn sons(&self, e: usize) -> &[usize] {
        &self.out_edges[self.head[e]]
    }

    /// Closed neighborhood of `e` in the line graph, ascending.
    pub fn neighborhood(&self, e: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.in_edge[self.tail[e]]
            .into_iter()
            .chain(self.out_of(self.tail[e]).iter().copied())
            .chain(self.out_of(self.head[e]).iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// The line graph of this component on local edge ids.
    pub fn local_graph(&self) -> WeightedGraph {
        let mut edges = Vec::new();
        for e in 0..self.edge_count() {
            edges.extend(
                self.neighborhood(e)
                    .into_iter()
                    .filter(|&x| x > e)
                    .map(|x| (e, x)),
            );
        }
        WeightedGraph::new(self.weights.clone(), &edges).expect("positive weights")
    }
}

/// Drops host edges outside `F` and returns one rooted tree per component
/// that still has an edge, ordered by smallest host vertex. Dropping edges
/// never changes which `F`-edges share an endpoint.
pub fn reduce_to_full_tree(
    tree: &HostTree,
    f: &EdgeWeights,
) -> Result<Vec<RootedEdgeTree>, TreeError> {
    check_weights(tree, f)?;
    let members = f.members();
    if members.is_empty() {
        return Err(TreeError::EmptyEdgeSet);
    }
    let n = tree.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let c = components.len();
        comp[start] = c;
        let mut vertices = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, e) in tree.incident(x) {
                if f.0[e].is_some() && comp[y] == usize::MAX {
                    comp[y] = c;
                    vertices.push(y);
                    stack.push(y);
                }
            }
        }
        vertices.sort_unstable();
        components.push((vertices, Vec::new()));
    }
    for (line_id, &e) in members.iter().enumerate() {
        let (a, _) = tree.edges()[e];
        components[comp[a]].1.push((line_id, e));
    }
    Ok(components
        .into_iter()
        .filter(|(_, edges)| !edges.is_empty())
        .map(|(vertices, edges)| {
            let local = |v: Vertex| vertices.binary_search(&v).expect("in component");
            let ends = edges
                .iter()
                .map(|&(_, e)| {
                    let (a, b) = tree.edges()[e];
                    (local(a), local(b))
                })
                .collect();
            let weights = edges
                .iter()
                .map(|&(_, e)| f.0[e].expect("member"))
                .collect();
            let line_ids = edges.iter().map(|&(id, _)| id).collect();
            RootedEdgeTree::new(vertices.clone(), ends, weights, line_ids)
        })
        .collect())
}

/// The smallest host vertex of the component; `t` is re-rooted there.
pub fn choose_root(t: &mut RootedEdgeTree) -> Vertex {
    t.orient(0);
    t.root()
}

/// Heights ascending: every edge is set to the least value that dominates
/// all of its sons given the values already placed below it. Height-0 edges
/// get 0.
pub fn bottom_up_f(t: &RootedEdgeTree) -> DominationFunction {
    let m = t.edge_count();
    let mut by_height: Vec<usize> = (0..m).collect();
    by_height.sort_by_key(|&e| (t.height(e), e));
    let mut f = DominationFunction::zeros(m);
    for e in by_height {
        let sons = t.sons(e);
        let below: u64 = f.sum_over(sons);
        let need = sons
            .iter()
            .map(|&s| {
                let grandsons = f.sum_over(t.sons(s));
                t.weight(s).saturating_sub(below + grandsons)
            })
            .max()
            .unwrap_or(0);
        f.set(e, need);
    }
    f
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootAdjustment {
    pub g: DominationFunction,
    /// Largest shortfall over root edges; `<= 0` when `f` already dominates.
    pub d: i64,
    /// The root edge that absorbed `d`, when `d > 0`.
    pub e0: Option<usize>,
}

/// Adds the largest root-edge shortfall to the root edge attaining it (ties:
/// smallest id). Every root edge neighbors every other, so one addition
/// fixes them all.
pub fn root_adjust(t: &RootedEdgeTree, f: &DominationFunction) -> RootAdjustment {
    let at_root = f.sum_over(t.root_edges()) as i64;
    let best = t
        .root_edges()
        .iter()
        .map(|&e| {
            let shortfall = t.weight(e) as i64 - at_root - f.sum_over(t.sons(e)) as i64;
            (shortfall, e)
        })
        .max_by_key(|&(d, e)| (d, std::cmp::Reverse(e)));
    let mut g = f.clone();
    match best {
        Some((d, e0)) if d > 0 => {
            g.add(e0, d as u64);
            RootAdjustment { g, d, e0: Some(e0) }
        }
        Some((d, _)) => RootAdjustment { g, d, e0: None },
        None => RootAdjustment { g, d: 0, e0: None },
    }
}

/// Chosen and deleted edges per layer, local edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeletionLayers {
    pub chosen: Vec<Vec<usize>>,
    pub deleted: Vec<Vec<usize>>,
}

/// Peels the tree from the top. In each layer every remaining root edge with
/// `g > 0` contributes one son covered exactly by `g` (largest `g`, then
/// smallest id); chosen sons, their neighbors and the zero root edges are
/// deleted. When `d > 0` the first layer is just `e0`.
pub fn extract_dispersed_tree(
    t: &RootedEdgeTree,
    adj: &RootAdjustment,
) -> Result<(Vec<usize>, DeletionLayers), TheoremViolation> {
    let g = &adj.g;
    let m = t.edge_count();
    let mut deleted = vec![false; m];
    let mut layers = DeletionLayers::default();
    let mut remaining = m;

    let live_sum = |deleted: &[bool], set: &[usize]| -> u64 {
        set.iter()
            .filter(|&&e| !deleted[e])
            .map(|&e| g.get(e))
            .sum()
    };

    while remaining > 0 {
        let first = layers.chosen.is_empty();
        // an edge is a root edge of the remaining forest when its parent edge
        // is gone
        let roots: Vec<usize> = (0..m)
            .filter(|&e| !deleted[e] && t.in_edge[t.tail[e]].is_none_or(|p| deleted[p]))
            .collect();
        let chosen: Vec<usize> = match adj.e0 {
            Some(e0) if first => vec![e0],
            _ => {
                let mut chosen = Vec::new();
                for &e in roots.iter().filter(|&&e| g.get(e) != 0) {
                    let pick = t
                        .sons(e)
                        .iter()
                        .copied()
                        .filter(|&s| {
                            !deleted[s] && live_sum(&deleted, &t.neighborhood(s)) == t.weight(s)
                        })
                        .max_by_key(|&s| (g.get(s), std::cmp::Reverse(s)))
                        .ok_or_else(|| {
                            TheoremViolation(format!(
                                "root edge {e} has g = {} but no son is covered exactly",
                                g.get(e)
                            ))
                        })?;
                    chosen.push(pick);
                }
                chosen
            }
        };

        let mut gone: BTreeSet<usize> = BTreeSet::new();
        for &c in &chosen {
            gone.extend(t.neighborhood(c).into_iter().filter(|&x| !deleted[x]));
        }
        gone.extend(roots.iter().copied().filter(|&e| g.get(e) == 0));
        let gone: Vec<usize> = gone.into_iter().collect();

        let removed_mass: u64 = gone.iter().map(|&e| g.get(e)).sum();
        let chosen_weight: u64 = chosen.iter().map(|&c| t.weight(c)).sum();
        if removed_mass != chosen_weight {
            return Err(TheoremViolation(format!(
                "layer {}: g[E] = {removed_mass} but w[I] = {chosen_weight}",
                layers.chosen.len() + 1
            )));
        }
        if gone.is_empty() {
            return Err(TheoremViolation("deletion layer removed nothing".into()));
        }
        for &e in &gone {
            deleted[e] = true;
        }
        remaining -= gone.len();
        layers.chosen.push(chosen);
        layers.deleted.push(gone);
    }

    let mut dispersed: Vec<usize> = layers.chosen.iter().flatten().copied().collect();
    dispersed.sort_unstable();
    let local = t.local_graph();
    if !local.is_dispersed(&dispersed).expect("local ids") {
        return Err(TheoremViolation(format!(
            "chosen edges {dispersed:?} are not dispersed"
        )));
    }
    if local.weight_of(&dispersed) != g.size() {
        return Err(TheoremViolation(format!(
            "w[I] = {} but |g| = {}",
            local.weight_of(&dispersed),
            g.size()
        )));
    }
    Ok((dispersed, layers))
}

/// Per-component result, local edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSolution {
    pub tree: RootedEdgeTree,
    pub f: DominationFunction,
    pub adjustment: RootAdjustment,
    pub dispersed: Vec<usize>,
    pub layers: DeletionLayers,
}

fn solve_component(t: RootedEdgeTree) -> Result<ComponentSolution, TheoremViolation> {
    let f = bottom_up_f(&t);
    let adjustment = root_adjust(&t, &f);
    let (dispersed, layers) = extract_dispersed_tree(&t, &adjustment)?;
    Ok(ComponentSolution {
        tree: t,
        f,
        adjustment,
        dispersed,
        layers,
    })
}

/// Solves every component, rooting each at `root_for(component)`.
pub fn solve_tree_components(
    tree: &HostTree,
    f: &EdgeWeights,
    root_for: impl Fn(&RootedEdgeTree) -> Vertex,
) -> Result<Vec<ComponentSolution>, TreeError> {
    reduce_to_full_tree(tree, f)?
        .into_iter()
        .map(|t| {
            let r = root_for(&t);
            let t = t.rooted_at(r)?;
            Ok(solve_component(t)?)
        })
        .collect()
}

fn assemble(
    tree: &HostTree,
    f: &EdgeWeights,
    parts: &[ComponentSolution],
) -> Result<Certificate, TreeError> {
    let n = f.members().len();
    let mut g = DominationFunction::zeros(n);
    let mut dispersed = Vec::new();
    for part in parts {
        for (e, value) in part.adjustment.g.support() {
            g.set(part.tree.line_id(e), value);
        }
        dispersed.extend(part.dispersed.iter().map(|&e| part.tree.line_id(e)));
    }
    let value = g.size();
    let cert = Certificate::new(g, dispersed, value);
    verify_certificate(&line_graph(tree, f)?, &cert)
        .map_err(|r| TheoremViolation(format!("tree certificate rejected: {r}")))?;
    Ok(cert)
}

/// Certificate on the line graph of `F` (vertex ids as in [`line_graph`]),
/// each component rooted at its smallest vertex.
pub fn solve_tree(tree: &HostTree, f: &EdgeWeights) -> Result<Certificate, TreeError> {
    let parts = solve_tree_components(tree, f, |t| t.host_vertices()[0])?;
    assemble(tree, f, &parts)
}

/// As [`solve_tree`], but the component containing `root` is rooted there.
pub fn solve_tree_rooted(
    tree: &HostTree,
    f: &EdgeWeights,
    root: Vertex,
) -> Result<Certificate, TreeError> {
    let parts = solve_tree_components(tree, f, |t| {
        if t.host_vertices().binary_search(&root).is_ok() {
            root
        } else {
            t.host_vertices()[0]
        }
    })?;
    assemble(tree, f, &parts)
}
