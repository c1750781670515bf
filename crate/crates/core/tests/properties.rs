use proptest::prelude::*;

use domw_core::graph::{
    build_intersection_graph, verify_certificate, Certificate, DominationFunction, WeightedGraph,
};
use domw_core::instances::{
    gen_interval, gen_split, gen_subtrees, gen_tree, parse_certificate, parse_instance,
    write_certificate, write_instance, Instance,
};
use domw_core::interval::{
    backward_greedy, extract_dispersed, forward_greedy, solve_interval, Interval, IntervalFamily,
};
use domw_core::oracles::{
    brute_gamma, brute_gamma_i, brute_rho, min_dominating_cost, OracleLimits,
};
use domw_core::split::solve_split;
use domw_core::tree_edge::{line_graph, solve_tree, solve_tree_components, solve_tree_rooted};

const CAP: OracleLimits = OracleLimits { max_vertices: 12 };

fn graph_strategy() -> impl Strategy<Value = WeightedGraph> {
    (1usize..=9).prop_flat_map(|n| {
        (
            prop::collection::vec(1u64..=5, n),
            prop::collection::vec((0..n, 0..n), 0..=2 * n),
        )
            .prop_map(|(w, e)| {
                let edges: Vec<_> = e.into_iter().filter(|(u, v)| u != v).collect();
                WeightedGraph::new(w, &edges).unwrap()
            })
    })
}

fn family_strategy() -> impl Strategy<Value = IntervalFamily> {
    prop::collection::vec((1i64..=12, 0i64..=6, 1u64..=5), 1..=8).prop_map(|v| {
        IntervalFamily::new(
            v.into_iter()
                .map(|(x, len, w)| Interval::new(x, x + len, w))
                .collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_neighborhoods_are_symmetric(g in graph_strategy()) {
        for v in 0..g.len() {
            let nv = g.closed_neighborhood(v).unwrap();
            prop_assert!(nv.contains(&v));
            for &u in &nv {
                prop_assert!(g.closed_neighborhood(u).unwrap().contains(&v));
            }
        }
    }

    #[test]
    fn dispersed_means_distance_three(g in graph_strategy(), mask in 0u32..512) {
        let set: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 1).collect();
        let far = set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..].iter().all(|&v| g.distance(u, v).unwrap().is_none_or(|d| d >= 3))
        });
        prop_assert_eq!(g.is_dispersed(&set).unwrap(), far);
    }

    #[test]
    fn weak_duality(g in graph_strategy(), values in prop::collection::vec(0u64..=5, 9), mask in 0u32..512) {
        let f = DominationFunction::from_values(values[..g.len()].to_vec());
        let set: Vec<usize> = (0..g.len()).filter(|&v| mask >> v & 1 == 1).collect();
        let all: Vec<usize> = (0..g.len()).collect();
        if g.is_w_dominating(&f, &all).unwrap() && g.is_dispersed(&set).unwrap() {
            prop_assert!(g.weight_of(&set) <= f.size());
        }
    }

    #[test]
    fn oracle_sandwich_and_witnesses(g in graph_strategy()) {
        let (rho, i) = brute_rho(&g, CAP).unwrap();
        let (gi, ind, _) = brute_gamma_i(&g, CAP).unwrap();
        let (gamma, f) = brute_gamma(&g, CAP).unwrap();
        prop_assert!(rho <= gi && gi <= gamma);
        prop_assert!(g.is_dispersed(&i).unwrap());
        prop_assert_eq!(g.weight_of(&i), rho);
        prop_assert_eq!(f.size(), gamma);
        prop_assert_eq!(min_dominating_cost(&g, &ind, CAP).unwrap(), gi);
        if rho == gamma {
            prop_assert!(verify_certificate(&g, &Certificate::new(f, i, gamma)).is_ok());
        }
    }

    #[test]
    fn interval_greedy_invariants(fam in family_strategy()) {
        let (f, ft) = forward_greedy(&fam);
        let (g, gt) = backward_greedy(&fam);
        prop_assert_eq!(ft.replay(fam.len()), f.clone());
        prop_assert_eq!(gt.replay(fam.len()), g.clone());
        prop_assert_eq!(f.size(), g.size());
        for v in 0..fam.len() {
            if fam.is_non_maximal(v) {
                prop_assert_eq!(f.get(v), 0);
                prop_assert_eq!(g.get(v), 0);
            }
        }
        let graph = fam.graph();
        let (i, dec) = extract_dispersed(&fam, &f, &g, &gt).unwrap();
        prop_assert_eq!(graph.weight_of(&i), f.size());
        let mut seen: Vec<usize> = dec.blocks.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..fam.len()).collect::<Vec<_>>());
        // f on a J-block equals f on its representative's closed neighborhood
        for (&k, &z) in &dec.representatives {
            let nz = graph.closed_neighborhood(z).unwrap();
            prop_assert_eq!(f.sum_over(&dec.blocks[k]), f.sum_over(&nz));
            prop_assert_eq!(f.sum_over(&nz), graph.weight(z));
        }
        for k in dec.k_blocks() {
            prop_assert_eq!(f.sum_over(&dec.blocks[k]), 0);
        }
    }

    #[test]
    fn interval_solver_matches_oracles(fam in family_strategy()) {
        let c = solve_interval(&fam).unwrap();
        let graph = fam.graph();
        prop_assert!(verify_certificate(&graph, &c).is_ok());
        prop_assert_eq!(c.value, brute_gamma(&graph, CAP).unwrap().0);
    }

    #[test]
    fn tree_roots_and_layers(seed in any::<u64>(), edges in 1usize..=9) {
        let (tree, f) = gen_tree(seed, edges, 5).unwrap();
        let lg = line_graph(&tree, &f).unwrap();
        let base = solve_tree(&tree, &f).unwrap();
        prop_assert!(verify_certificate(&lg, &base).is_ok());
        prop_assert_eq!(base.value, brute_rho(&lg, CAP).unwrap().0);
        for root in 0..tree.vertex_count() {
            prop_assert_eq!(solve_tree_rooted(&tree, &f, root).unwrap().value, base.value);
        }
        for part in solve_tree_components(&tree, &f, |t| t.host_vertices()[0]).unwrap() {
            let mut all: Vec<usize> = part.layers.deleted.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..part.tree.edge_count()).collect::<Vec<_>>());
            for (chosen, gone) in part.layers.chosen.iter().zip(&part.layers.deleted) {
                let mass: u64 = gone.iter().map(|&e| part.adjustment.g.get(e)).sum();
                let weight: u64 = chosen.iter().map(|&e| part.tree.weight(e)).sum();
                prop_assert_eq!(mass, weight);
            }
        }
    }

    #[test]
    fn split_witness(seed in any::<u64>(), n_a in 0usize..=5, n_b in 0usize..=4, p in 1u64..=100) {
        prop_assume!(n_a + n_b > 0);
        let inst = gen_split(seed, n_a, n_b, p, 5).unwrap();
        let r = solve_split(&inst).unwrap();
        let g = inst.graph();
        let all: Vec<usize> = (0..g.len()).collect();
        prop_assert!(g.is_w_dominating(&r.dominating, &all).unwrap());
        prop_assert_eq!(r.dominating.size(), r.value);
        prop_assert_eq!(r.witness_cost, r.value);
        let w = &r.witness_independent;
        prop_assert!(w.iter().all(|&u| w.iter().all(|&v| u == v || !g.are_adjacent(u, v))));
        prop_assert_eq!(min_dominating_cost(g, w, CAP).unwrap(), r.value);
        prop_assert_eq!(brute_gamma(g, CAP).unwrap().0, r.value);
    }

    #[test]
    fn generated_instances_round_trip(seed in any::<u64>()) {
        let (tree, f) = gen_tree(seed, 1 + (seed % 9) as usize, 5).unwrap();
        let (host, subtrees, weights) = gen_subtrees(seed, 1 + (seed % 7) as usize, 4, 3).unwrap();
        let explicit = build_intersection_graph(&host, &subtrees, &weights).unwrap();
        let instances = vec![
            Instance::Interval(gen_interval(seed, 5, 12, 5).unwrap()),
            Instance::TreeEdges { tree, weights: f },
            Instance::Split(gen_split(seed, 2, 3, 50, 5).unwrap()),
            Instance::SubtreeIntersection { tree: host, subtrees, weights },
            Instance::Explicit(explicit),
        ];
        for inst in instances {
            let text = write_instance(&inst);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(write_instance(&back), text);
        }
    }

    #[test]
    fn certificates_round_trip(fam in family_strategy()) {
        let c = solve_interval(&fam).unwrap();
        let back = parse_certificate(&write_certificate(&c)).unwrap();
        prop_assert!(verify_certificate(&fam.graph(), &back).is_ok());
        prop_assert_eq!(back, c);
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        let a = write_instance(&Instance::Interval(gen_interval(seed, 6, 12, 5).unwrap()));
        let b = write_instance(&Instance::Interval(gen_interval(seed, 6, 12, 5).unwrap()));
        prop_assert_eq!(a, b);
        let (t1, f1) = gen_tree(seed, 7, 5).unwrap();
        let (t2, f2) = gen_tree(seed, 7, 5).unwrap();
        prop_assert_eq!(
            write_instance(&Instance::TreeEdges { tree: t1, weights: f1 }),
            write_instance(&Instance::TreeEdges { tree: t2, weights: f2 })
        );
    }
}
