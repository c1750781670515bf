use crate::graph::{DominationFunction, Vertex, WeightedGraph};

use super::{check_size, OracleError, OracleLimits};

type Mask = u64;

fn closed_masks(g: &WeightedGraph) -> Vec<Mask> {
    (0..g.len())
        .map(|v| g.neighbors(v).iter().fold(1 << v, |m, &u| m | (1 << u)))
        .collect()
}

fn members(mask: Mask) -> impl Iterator<Item = Vertex> {
    (0..64).filter(move |&v| mask >> v & 1 == 1)
}

/// Branch-and-bound for the cheapest integral `f` with `f[N(u)] >= w(u)` for
/// every demanded `u`.
///
/// Variables are the vertices of `N[demanded]`, by descending degree then
/// id. The bound is the largest unmet residual. A variable never needs a
/// value above `max w`: at that value every constraint it enters is met on
/// its own. The search also caps it at the largest residual among its
/// constraints, which is tighter and equally safe.
struct CoverSearch {
    vars: Vec<Vertex>,
    /// Demanded vertices each variable helps, as positions into `residual`.
    touches: Vec<Vec<usize>>,
    /// Position of the last variable touching each constraint.
    last: Vec<usize>,
    residual: Vec<i64>,
    cap: i64,
    values: Vec<u64>,
    best: u64,
    best_values: Vec<u64>,
}

impl CoverSearch {
    fn run(&mut self, pos: usize, cost: u64) {
        let unmet = self.residual.iter().copied().max().unwrap_or(0).max(0) as u64;
        if unmet == 0 {
            if cost < self.best {
                self.best = cost;
                self.best_values.clone_from(&self.values);
            }
            return;
        }
        if pos == self.vars.len() || cost + unmet >= self.best {
            return;
        }
        let lo = self.touches[pos]
            .iter()
            .filter(|&&c| self.last[c] == pos)
            .map(|&c| self.residual[c].max(0))
            .max()
            .unwrap_or(0);
        let hi = self.touches[pos]
            .iter()
            .map(|&c| self.residual[c])
            .max()
            .unwrap_or(0)
            .clamp(0, self.cap);
        for value in (lo..=hi).rev() {
            for &c in &self.touches[pos] {
                self.residual[c] -= value;
            }
            self.values[pos] = value as u64;
            self.run(pos + 1, cost + value as u64);
            for &c in &self.touches[pos] {
                self.residual[c] += value;
            }
        }
        self.values[pos] = 0;
    }
}

/// Cheapest function dominating the demanded set.
pub(crate) fn min_cost_to_dominate(
    g: &WeightedGraph,
    demanded: &[Vertex],
) -> (u64, DominationFunction) {
    let n = g.len();
    let nb = closed_masks(g);
    let demand_mask = demanded.iter().fold(0 as Mask, |m, &u| m | 1 << u);
    let reach = members(demand_mask).fold(0 as Mask, |m, u| m | nb[u]);
    let mut vars: Vec<Vertex> = members(reach).collect();
    vars.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let constraints: Vec<Vertex> = members(demand_mask).collect();
    let touches: Vec<Vec<usize>> = vars
        .iter()
        .map(|&v| {
            constraints
                .iter()
                .enumerate()
                .filter(|&(_, &u)| nb[u] >> v & 1 == 1)
                .map(|(c, _)| c)
                .collect()
        })
        .collect();
    let mut last = vec![0; constraints.len()];
    for (pos, list) in touches.iter().enumerate() {
        for &c in list {
            last[c] = pos;
        }
    }
    let residual: Vec<i64> = constraints.iter().map(|&u| g.weight(u) as i64).collect();
    let cap = g.weights().iter().copied().max().unwrap_or(0) as i64;
    // f = w on the demanded set is always feasible
    let incumbent: Vec<u64> = vars
        .iter()
        .map(|&v| {
            if demand_mask >> v & 1 == 1 {
                g.weight(v)
            } else {
                0
            }
        })
        .collect();
    let mut search = CoverSearch {
        touches,
        last,
        residual,
        cap,
        values: vec![0; vars.len()],
        best: incumbent.iter().sum::<u64>() + 1,
        best_values: incumbent,
        vars,
    };
    search.run(0, 0);
    let mut f = DominationFunction::zeros(n);
    for (pos, &v) in search.vars.iter().enumerate() {
        f.set(v, search.best_values[pos]);
    }
    (search.best, f)
}

/// `γ_w` and an optimal dominating function.
pub fn brute_gamma(
    g: &WeightedGraph,
    limits: OracleLimits,
) -> Result<(u64, DominationFunction), OracleError> {
    check_size(g, limits)?;
    let all: Vec<Vertex> = (0..g.len()).collect();
    Ok(min_cost_to_dominate(g, &all))
}

/// `ρ_w` and a heaviest dispersed set (ascending).
pub fn brute_rho(
    g: &WeightedGraph,
    limits: OracleLimits,
) -> Result<(u64, Vec<Vertex>), OracleError> {
    check_size(g, limits)?;
    let nb = closed_masks(g);
    // conflict: within distance 2, i.e. overlapping closed neighborhoods
    let conflict: Vec<Mask> = nb
        .iter()
        .map(|&m| members(m).fold(0, |acc, u| acc | nb[u]))
        .collect();

    fn go(
        v: usize,
        allowed: Mask,
        weight: u64,
        chosen: Mask,
        g: &WeightedGraph,
        conflict: &[Mask],
        best: &mut (u64, Mask),
    ) {
        let rest: u64 = members(allowed)
            .filter(|&u| u >= v)
            .map(|u| g.weight(u))
            .sum();
        if weight + rest <= best.0 {
            return;
        }
        if v == g.len() {
            *best = (weight, chosen);
            return;
        }
        if allowed >> v & 1 == 1 {
            go(
                v + 1,
                allowed & !conflict[v],
                weight + g.weight(v),
                chosen | 1 << v,
                g,
                conflict,
                best,
            );
        }
        go(
            v + 1,
            allowed & !(1 << v),
            weight,
            chosen,
            g,
            conflict,
            best,
        );
    }

    let full: Mask = if g.len() == 64 {
        !0
    } else {
        (1 << g.len()) - 1
    };
    let mut best = (0, 0);
    go(0, full, 0, 0, g, &conflict, &mut best);
    Ok((best.0, members(best.1).collect()))
}

/// Every maximal independent set, each ascending, via Bron–Kerbosch with
/// pivoting on the complement graph.
pub fn maximal_independent_sets(g: &WeightedGraph) -> Vec<Vec<Vertex>> {
    let n = g.len();
    let nb = closed_masks(g);
    // non-neighbors (excluding self) of each vertex
    let full: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
    let free: Vec<Mask> = nb.iter().map(|&m| full & !m).collect();
    let mut out = Vec::new();

    fn bk(r: Mask, p: Mask, x: Mask, free: &[Mask], out: &mut Vec<Vec<Vertex>>) {
        if p == 0 && x == 0 {
            out.push(members(r).collect());
            return;
        }
        let pivot = members(p | x)
            .max_by_key(|&u| (p & free[u]).count_ones())
            .expect("p | x nonempty");
        let mut p = p;
        let mut x = x;
        for v in members(p & !free[pivot]) {
            bk(r | 1 << v, p & free[v], x & free[v], free, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    if n > 0 {
        bk(0, full, 0, &free, &mut out);
    } else {
        out.push(Vec::new());
    }
    out.sort();
    out
}

/// `γ^i_w`: the most expensive independent set to dominate. Only maximal
/// independent sets are tried since cost is monotone in the demanded set.
/// Ties go to the lexicographically smallest witness.
pub fn brute_gamma_i(
    g: &WeightedGraph,
    limits: OracleLimits,
) -> Result<(u64, Vec<Vertex>, DominationFunction), OracleError> {
    check_size(g, limits)?;
    let mut best: Option<(u64, Vec<Vertex>, DominationFunction)> = None;
    for set in maximal_independent_sets(g) {
        let (cost, f) = min_cost_to_dominate(g, &set);
        if best.as_ref().is_none_or(|(b, _, _)| cost > *b) {
            best = Some((cost, set, f));
        }
    }
    Ok(best.unwrap_or((0, Vec::new(), DominationFunction::zeros(0))))
}

/// Cheapest function dominating `demanded` (no size cap beyond the bitmask
/// width).
pub fn min_dominating_cost(
    g: &WeightedGraph,
    demanded: &[Vertex],
    limits: OracleLimits,
) -> Result<u64, OracleError> {
    check_size(g, limits)?;
    Ok(min_cost_to_dominate(g, demanded).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_intersection_graph;
    use crate::instances::fixtures;

    fn big() -> OracleLimits {
        OracleLimits { max_vertices: 16 }
    }

    fn forked_star_graph() -> WeightedGraph {
        let (host, subtrees, weights) = fixtures::example_forked_star();
        build_intersection_graph(&host, &subtrees, &weights).unwrap()
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::new(vec![7], &[]).unwrap();
        let lim = OracleLimits::default();
        assert_eq!(brute_gamma(&g, lim).unwrap().0, 7);
        assert_eq!(brute_rho(&g, lim).unwrap(), (7, vec![0]));
        assert_eq!(brute_gamma_i(&g, lim).unwrap().0, 7);
    }

    #[test]
    fn empty_graph() {
        let g = WeightedGraph::new(vec![], &[]).unwrap();
        let lim = OracleLimits::default();
        assert_eq!(brute_gamma(&g, lim).unwrap().0, 0);
        assert_eq!(brute_rho(&g, lim).unwrap().0, 0);
        assert_eq!(brute_gamma_i(&g, lim).unwrap().0, 0);
    }

    #[test]
    fn split_triangle_values() {
        let g = fixtures::example_split_triangle().graph().clone();
        let lim = OracleLimits::default();
        let (gamma, f) = brute_gamma(&g, lim).unwrap();
        assert_eq!(gamma, 6);
        assert!(g.is_w_dominating(&f, &(0..6).collect::<Vec<_>>()).unwrap());
        let (rho, set) = brute_rho(&g, lim).unwrap();
        assert_eq!(rho, 5);
        assert!(g.is_dispersed(&set).unwrap());
        assert_eq!(brute_gamma_i(&g, lim).unwrap().0, 6);
        // every dispersed set is a singleton
        for u in 0..6 {
            for v in u + 1..6 {
                assert!(!g.is_dispersed(&[u, v]).unwrap());
            }
        }
    }

    #[test]
    fn forked_star_values() {
        let g = forked_star_graph();
        assert_eq!(brute_gamma(&g, big()).unwrap().0, 5);
        assert_eq!(brute_rho(&g, big()).unwrap().0, 4);
        let (gi, witness, f) = brute_gamma_i(&g, big()).unwrap();
        assert_eq!(gi, 4);
        assert!(g.is_w_dominating(&f, &witness).unwrap());
    }

    #[test]
    fn size_cap() {
        let g = forked_star_graph();
        assert_eq!(
            brute_gamma(&g, OracleLimits::default()).unwrap_err(),
            OracleError::InstanceTooLarge {
                vertices: 15,
                cap: 10
            }
        );
    }

    #[test]
    fn maximal_independent_sets_of_a_path() {
        let g = WeightedGraph::new(vec![1; 4], &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            maximal_independent_sets(&g),
            vec![vec![0, 2], vec![0, 3], vec![1, 3]]
        );
    }

    #[test]
    fn value_cap_keeps_feasibility() {
        // raising one vertex far above max w never lowers the optimum; the
        // capped search finds the same value as an uncapped enumeration
        let g = WeightedGraph::new(vec![3, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        let mut best = u64::MAX;
        for a in 0..=6u64 {
            for b in 0..=6u64 {
                for c in 0..=6u64 {
                    let f = DominationFunction::from_values(vec![a, b, c]);
                    if g.is_w_dominating(&f, &[0, 1, 2]).unwrap() {
                        best = best.min(a + b + c);
                    }
                }
            }
        }
        assert_eq!(brute_gamma(&g, OracleLimits::default()).unwrap().0, best);
    }
}
