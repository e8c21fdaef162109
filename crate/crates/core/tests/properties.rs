use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treelen::exact::{solve_min_tree_length, EnumerationSpec};
use treelen::graph::{complement, complete_graph, edge_disjoint_union, read_graph, write_graph};
use treelen::measures::{edge_congestions, sigma_ll, tree_length, tree_length_by_dilation};
use treelen::search::{local_search, random_layout, SearchConfig};
use treelen::tree::newick::{layout_to_newick, parse_layout};
use treelen::tree::tree_isomorphic;
use treelen::{Layout, Multigraph};

fn graph(max_n: usize, max_mult: u64) -> impl Strategy<Value = Multigraph> {
    (3..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(0..=max_mult, pairs).prop_map(move |mults| {
            let mut g = Multigraph::empty(n);
            let mut it = mults.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    let m = it.next().unwrap();
                    if m > 0 {
                        g.add_edge(u, v, m).unwrap();
                    }
                }
            }
            g
        })
    })
}

fn layout_for(n: usize, seed: u64) -> Layout {
    random_layout(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congestion_and_dilation_agree(g in graph(12, 4), seed in any::<u64>()) {
        let l = layout_for(g.vertex_count(), seed);
        prop_assert_eq!(tree_length(&l, &g).unwrap(), tree_length_by_dilation(&l, &g).unwrap());
    }

    #[test]
    fn leaf_edges_carry_the_degree(g in graph(10, 3), seed in any::<u64>()) {
        let l = layout_for(g.vertex_count(), seed);
        let tree = l.tree().tree();
        let cong = edge_congestions(&l, &g).unwrap();
        for (e, &(a, b)) in tree.edges().iter().enumerate() {
            for x in [a, b] {
                if let Some(v) = l.vertex_at(x) {
                    prop_assert_eq!(cong[e], g.weighted_degree(v));
                }
            }
        }
    }

    #[test]
    fn tree_length_is_additive(g in graph(9, 3), seed in any::<u64>(), other in any::<u64>()) {
        let n = g.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(other);
        let h = {
            use rand::Rng;
            let mut h = Multigraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        h.add_edge(u, v, rng.gen_range(1..=3)).unwrap();
                    }
                }
            }
            h
        };
        let l = layout_for(n, seed);
        let union = edge_disjoint_union(&g, &h).unwrap();
        prop_assert_eq!(
            tree_length(&l, &union).unwrap(),
            tree_length(&l, &g).unwrap() + tree_length(&l, &h).unwrap()
        );
    }

    #[test]
    fn graph_and_complement_sum_to_sigma(g in graph(12, 1), seed in any::<u64>()) {
        let l = layout_for(g.vertex_count(), seed);
        let c = complement(&g).unwrap();
        prop_assert_eq!(
            tree_length(&l, &g).unwrap() + tree_length(&l, &c).unwrap(),
            sigma_ll(l.tree().tree())
        );
        prop_assert_eq!(complement(&c).unwrap(), g.clone());
        prop_assert_eq!(
            edge_disjoint_union(&g, &c).unwrap(),
            complete_graph(g.vertex_count(), 1).unwrap()
        );
    }

    #[test]
    fn graph_text_round_trips(g in graph(10, 5)) {
        prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn newick_round_trips(n in 3usize..14, seed in any::<u64>()) {
        let l = layout_for(n, seed);
        let back = parse_layout(&layout_to_newick(&l), 3).unwrap();
        prop_assert!(tree_isomorphic(&l, &back, true));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sharding_does_not_change_the_answer(g in graph(7, 3), shards in 2usize..9) {
        let n = g.vertex_count();
        let one = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)).unwrap();
        let many = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n).with_shards(shards)).unwrap();
        prop_assert_eq!(one.best_value, many.best_value);
        prop_assert_eq!(one.optimal_count, many.optimal_count);
        prop_assert_eq!(one.trees_evaluated, many.trees_evaluated);
        prop_assert_eq!(&one.witnesses, &many.witnesses);
    }

    #[test]
    fn rooting_never_helps(g in graph(6, 3)) {
        let n = g.vertex_count();
        let unrooted = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)).unwrap().best_value;
        let rooted = solve_min_tree_length(&g, &EnumerationSpec::rooted(n)).unwrap().best_value;
        prop_assert!(rooted >= unrooted);
    }

    #[test]
    fn higher_degree_never_hurts(g in graph(6, 3)) {
        let n = g.vertex_count();
        let cubic = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)).unwrap().best_value;
        let routing = solve_min_tree_length(&g, &EnumerationSpec::routing(n, 4)).unwrap().best_value;
        prop_assert!(routing <= cubic);
    }

    #[test]
    fn witnesses_evaluate_to_the_optimum(g in graph(7, 3)) {
        let n = g.vertex_count();
        let sol = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)).unwrap();
        for w in &sol.witnesses {
            prop_assert_eq!(tree_length(w.as_layout().unwrap(), &g).unwrap(), sol.best_value);
        }
    }

    #[test]
    fn local_search_is_bounded_by_the_optimum(g in graph(7, 3), seed in any::<u64>()) {
        let n = g.vertex_count();
        let exact = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)).unwrap().best_value;
        let cfg = SearchConfig { seed, restarts: 4, ..SearchConfig::default() };
        let r = local_search(&g, &cfg).unwrap();
        prop_assert!(r.value >= exact);
        prop_assert_eq!(tree_length(&r.layout, &g).unwrap(), r.value);
    }
}
