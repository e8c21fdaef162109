use treelen::corpus::{self, builtin_graphs};
use treelen::exact::{solve_clique_cover, solve_min_tree_length, EnumerationSpec};
use treelen::graph::complete_graph;
use treelen::reductions::{
    budget_separation, extract_clique4_answer, extract_cliquek_answer, pad_to_k_power, reduce_clique4_multigraph,
    reduce_cliquek_routing, unpad_cover, Bookkeeping,
};
use treelen::Multigraph;

#[test]
fn clique4_corpus_matches_the_cover_oracle() {
    for (name, g) in builtin_graphs() {
        if g.vertex_count() != 8 {
            continue;
        }
        let a = reduce_clique4_multigraph(&g).unwrap();
        let sol = solve_min_tree_length(&a.output_graph, &EnumerationSpec::unrooted(8).with_shards(8)).unwrap();
        let got = extract_clique4_answer(&a, &sol).unwrap();
        let oracle = solve_clique_cover(&g, &[2, 2, 2, 2]).unwrap();
        assert_eq!(got.is_some(), oracle.is_some(), "{name}");
        if let Some(p) = got {
            assert!(p.all_cliques(&g), "{name}");
        }
    }
}

#[test]
fn budget_separates_at_four_and_eight() {
    for name in ["path:4", "complete:4", "cycle:8", "star:8", "q3"] {
        let a = reduce_clique4_multigraph(&corpus::builtin(name).unwrap()).unwrap();
        let b = budget_separation(&a).unwrap();
        assert!(b.holds, "{name}: {b:?}");
        assert!(b.max_original < b.big_m);
        if let Some(other) = b.min_other_sigma {
            assert!(other > b.family_sigma, "{name}");
        }
    }
}

#[test]
fn cliquek_routing_on_six_vertices() {
    let cases = [
        ("cycle:6", true),
        ("complete:6", true),
        ("complete-minus-matching:6", true),
        ("path:6", true),
        ("star:6", false),
    ];
    for (name, yes) in cases {
        let g = corpus::builtin(name).unwrap();
        let a = reduce_cliquek_routing(&g, 3).unwrap();
        assert!(matches!(a.bookkeeping, Bookkeeping::CliquekRouting { k: 3, l: 1, .. }));
        let sol = solve_min_tree_length(&a.output_graph, &EnumerationSpec::routing(6, 3)).unwrap();
        let got = extract_cliquek_answer(&a, &sol).unwrap();
        let oracle = solve_clique_cover(&g, &[2, 2, 2]).unwrap();
        assert_eq!(got.is_some(), oracle.is_some(), "{name}");
        assert_eq!(oracle.is_some(), yes, "{name}");
        assert!(budget_separation(&a).unwrap().holds, "{name}");
    }
}

fn triangles_plus(extra: &[(usize, usize)]) -> Multigraph {
    let mut pairs = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (6, 8)];
    pairs.extend_from_slice(extra);
    Multigraph::from_pairs(9, &pairs).unwrap()
}

#[test]
fn padding_preserves_cover_answers() {
    let graphs = [
        corpus::cycle(9).unwrap(),
        complete_graph(9, 1).unwrap(),
        triangles_plus(&[]),
        triangles_plus(&[(2, 3), (5, 6)]),
        corpus::cycle(6).unwrap(),
        corpus::complete_minus_matching(6).unwrap(),
    ];
    for g in graphs {
        let n = g.vertex_count();
        let a = pad_to_k_power(&g, 3).unwrap();
        let Bookkeeping::PadK { block_size, l, .. } = a.bookkeeping else {
            unreachable!()
        };
        assert_eq!(a.output_graph.vertex_count(), 3 * 2usize.pow(l));
        let before = solve_clique_cover(&g, &[n / 3; 3]).unwrap();
        let after = solve_clique_cover(&a.output_graph, &[block_size; 3]).unwrap();
        assert_eq!(before.is_some(), after.is_some());
        if let Some(p) = after {
            let back = unpad_cover(&a, &p).unwrap();
            assert!(back.all_cliques(&g));
            assert_eq!(back.sizes(), vec![n / 3; 3]);
        }
    }
}
