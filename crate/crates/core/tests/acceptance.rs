//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::VecDeque;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treelen::canonical::{build_family_member, capacity, FamilyParams};
use treelen::corpus::{self, builtin_graphs};
use treelen::exact::{
    count_by_enumeration, solve_clique_cover, solve_min_sigma_ll, solve_min_tree_length, verify_congested,
    EnumerationSpec, ExactSolution,
};
use treelen::graph::{complement, complete_graph, edge_disjoint_union};
use treelen::measures::{edge_congestions, sigma_ll, tree_length, tree_length_by_dilation};
use treelen::reductions::{
    add_isolated, add_pendant, expected_subdivided_optimum, extract_clique4_answer, isolated_at_root,
    pendant_shares_anchor, reduce_clique4_multigraph, subdivide_all_edges, subdivision_structure,
};
use treelen::search::{local_search, random_layout, SearchConfig};
use treelen::tree::unlabeled_isomorphic;
use treelen::{Layout, Multigraph, RootedBinaryTree};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T>(r: treelen::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// independent evaluator: BFS over the host tree for every graph edge
fn path_sum(layout: &Layout, g: &Multigraph) -> u64 {
    let tree = layout.tree().tree();
    let mut total = 0;
    for (u, v, m) in g.edges() {
        let (a, b) = (layout.leaf_of(u), layout.leaf_of(v));
        let mut dist = vec![usize::MAX; tree.node_count()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            for &y in tree.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        total += dist[b] as u64 * m;
    }
    total
}

fn rooted_path_sum(b: &RootedBinaryTree, g: &Multigraph) -> u64 {
    g.edges()
        .map(|(u, v, m)| b.distance(b.leaf_of(u), b.leaf_of(v)) as u64 * m)
        .sum()
}

fn double_factorial(k: i64) -> u64 {
    if k <= 1 {
        1
    } else {
        k as u64 * double_factorial(k - 2)
    }
}

// unrooted trees on n leaves: each of the 2k − 3 edges of a k-leaf tree
// takes the next leaf
fn recursive_count(n: usize) -> u64 {
    if n == 3 {
        1
    } else {
        recursive_count(n - 1) * (2 * (n as u64 - 1) - 3)
    }
}

fn family_optimality() -> Outcome {
    let mut values = Vec::new();
    for n in 3..=9 {
        let sol = ok(solve_min_sigma_ll(&EnumerationSpec::unrooted(n)))?;
        let (member, _) = ok(build_family_member(ok(FamilyParams::new(3, 3, 2 * n - 2))?))?;
        check(sol.optimal_count == 1, format!("n={n}: {} optimal shapes", sol.optimal_count))?;
        let shape = sol.witnesses[0].as_layout().unwrap().tree().tree();
        check(unlabeled_isomorphic(shape, &member), format!("n={n}: optimum is not the family member"))?;
        check(sigma_ll(&member) == sol.best_value, format!("n={n}: member sigma differs"))?;
        values.push(sol.best_value);
    }
    Ok(format!("min sigma_LL n=3..9 = {values:?}, unique family shape"))
}

fn capacity_and_counting() -> Outcome {
    for (r, delta) in [(3, 3), (2, 3), (4, 4)] {
        for k in 0..=6u32 {
            let independent: u64 = 1 + (0..k).map(|j| r as u64 * (delta as u64 - 1).pow(j)).sum::<u64>();
            check(
                capacity(k, r, delta) == independent,
                format!("M_{k}({r},{delta}) = {} != {independent}", capacity(k, r, delta)),
            )?;
        }
    }
    for n in 3..=10 {
        let c = ok(count_by_enumeration(&EnumerationSpec::unrooted(n).with_shards(8)))?;
        let want = double_factorial(2 * n as i64 - 5);
        check(c == want && c == recursive_count(n), format!("unrooted n={n}: {c} != {want}"))?;
    }
    for n in 2..=9 {
        let c = ok(count_by_enumeration(&EnumerationSpec::rooted(n).with_shards(8)))?;
        let want = double_factorial(2 * n as i64 - 3);
        check(c == want, format!("rooted n={n}: {c} != {want}"))?;
    }
    Ok("capacities k<=6 match; (2n-5)!! for n<=10 and (2n-3)!! for n<=9".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_mult: u64) -> Multigraph {
    let mut g = Multigraph::empty(n);
    let p = rng.gen_range(0.2..0.8);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, rng.gen_range(1..=max_mult)).unwrap();
            }
        }
    }
    g
}

fn measure_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let n = rng.gen_range(3..=12);
        let g = random_graph(&mut rng, n, 3);
        let layout = ok(random_layout(n, &mut rng))?;
        let by_cut = ok(tree_length(&layout, &g))?;
        let by_dil = ok(tree_length_by_dilation(&layout, &g))?;
        check(by_cut == by_dil && by_dil == path_sum(&layout, &g), format!("case {case}: duality {by_cut} vs {by_dil}"))?;
        let cong = ok(edge_congestions(&layout, &g))?;
        let tree = layout.tree().tree();
        for (e, &(a, b)) in tree.edges().iter().enumerate() {
            let leaf = if tree.is_leaf(a) { Some(a) } else if tree.is_leaf(b) { Some(b) } else { None };
            if let Some(x) = leaf {
                let v = layout.vertex_at(x).unwrap();
                check(cong[e] == g.weighted_degree(v), format!("case {case}: leaf edge congestion"))?;
            }
        }
        let h = random_graph(&mut rng, n, 2);
        let union = ok(edge_disjoint_union(&g, &h))?;
        check(
            ok(tree_length(&layout, &union))? == by_cut + ok(tree_length(&layout, &h))?,
            format!("case {case}: additivity"),
        )?;
        let simple = random_graph(&mut rng, n, 1);
        let comp = ok(complement(&simple))?;
        check(
            ok(tree_length(&layout, &simple))? + ok(tree_length(&layout, &comp))? == sigma_ll(tree),
            format!("case {case}: complement identity"),
        )?;
    }
    Ok("200 random pairs: duality, leaf congestion, additivity, complement".into())
}

fn cross_checked(sol: &ExactSolution, g: &Multigraph) -> Result<(), String> {
    for w in &sol.witnesses {
        let v = match (w.as_layout(), w.as_rooted()) {
            (Some(l), _) => path_sum(l, g),
            (_, Some(b)) => rooted_path_sum(b, g),
            _ => unreachable!(),
        };
        check(v == sol.best_value, format!("witness evaluates to {v}, solver says {}", sol.best_value))?;
    }
    Ok(())
}

fn exact_spot_values() -> Outcome {
    let k4 = ok(complete_graph(4, 1))?;
    let k8 = ok(complete_graph(8, 1))?;
    let cases = [
        ("K4 unrooted", &k4, EnumerationSpec::unrooted(4), 16),
        ("K4 rooted", &k4, EnumerationSpec::rooted(4), 19),
        ("K4 routing 4", &k4, EnumerationSpec::routing(4, 4), 12),
        ("K8 unrooted", &k8, EnumerationSpec::unrooted(8).with_shards(4), 120),
    ];
    let mut report = Vec::new();
    for (name, g, spec, want) in cases {
        let sol = ok(solve_min_tree_length(g, &spec))?;
        cross_checked(&sol, g)?;
        check(sol.best_value == want, format!("{name}: {} != {want}", sol.best_value))?;
        report.push(format!("{name}={}", sol.best_value));
    }
    let (member, _) = ok(build_family_member(ok(FamilyParams::new(3, 3, 14))?))?;
    check(sigma_ll(&member) == 120, "K8 optimum differs from the 8-leaf member's sigma_LL")?;
    Ok(report.join(", "))
}

fn reduction_soundness() -> Outcome {
    let corpus = [
        ("cycle:8", true),
        ("star:8", false),
        ("complete:8", true),
        ("complete-minus-matching:8", true),
    ];
    let mut report = Vec::new();
    for (name, yes) in corpus {
        let g = ok(corpus::builtin(name))?;
        let artifact = ok(reduce_clique4_multigraph(&g))?;
        let sol = ok(solve_min_tree_length(&artifact.output_graph, &EnumerationSpec::unrooted(8).with_shards(8)))?;
        let got = ok(extract_clique4_answer(&artifact, &sol))?;
        let oracle = ok(solve_clique_cover(&g, &[2, 2, 2, 2]))?;
        check(got.is_some() == oracle.is_some(), format!("{name}: reduction and oracle disagree"))?;
        check(oracle.is_some() == yes, format!("{name}: expected {}", if yes { "YES" } else { "NO" }))?;
        if let Some(p) = &got {
            check(p.all_cliques(&g), format!("{name}: pulled-back blocks are not cliques"))?;
        }
        report.push(format!("{name}={}", if yes { "YES" } else { "NO" }));
    }
    Ok(report.join(", "))
}

fn pendant_and_rooted() -> Outcome {
    let mut failures = Vec::new();
    let mut report = Vec::new();
    for n in [4, 5] {
        let g = ok(complete_graph(n, 1))?;
        let (congested, _) = ok(verify_congested(&g, &EnumerationSpec::unrooted(n)))?;
        check(congested, format!("K{n} is not congested"))?;
        let base = ok(solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)))?;
        let pend = ok(add_pendant(&g, 0))?;
        let with_pendant = ok(solve_min_tree_length(&pend.output_graph, &EnumerationSpec::unrooted(n + 1)))?;
        cross_checked(&with_pendant, &pend.output_graph)?;
        let gain = with_pendant.best_value - base.best_value;
        report.push(format!("K{n}: {} -> {} (+{gain})", base.best_value, with_pendant.best_value));
        if gain != 2 {
            failures.push(format!("K{n}: pendant adds {gain}, not 2"));
        }
        for w in &with_pendant.witnesses {
            if !ok(pendant_shares_anchor(&pend, w.as_layout().unwrap()))? {
                failures.push(format!("K{n}: pendant not in a cherry with its anchor"));
            }
        }
        let iso = add_isolated(&pend.output_graph);
        let rooted = ok(solve_min_tree_length(&iso.output_graph, &EnumerationSpec::rooted(n + 2)))?;
        cross_checked(&rooted, &iso.output_graph)?;
        if rooted.best_value != with_pendant.best_value + 1 {
            failures.push(format!(
                "K{n}: rooted {} != unrooted {} + 1",
                rooted.best_value, with_pendant.best_value
            ));
        }
        for w in &rooted.witnesses {
            if !ok(isolated_at_root(&iso, w.as_rooted().unwrap()))? {
                failures.push(format!("K{n}: isolated leaf not at the root"));
            }
        }
        report.push(format!("rooted {} = {} + 1", rooted.best_value, with_pendant.best_value));
    }
    if failures.is_empty() {
        Ok(report.join("; "))
    } else {
        Err(format!("{} [{}]", failures.join("; "), report.join("; ")))
    }
}

fn subdivision_lemma() -> Outcome {
    let g = ok(complete_graph(3, 2))?;
    let base = ok(solve_min_tree_length(&g, &EnumerationSpec::unrooted(3)))?;
    let artifact = ok(subdivide_all_edges(&g))?;
    let spec = EnumerationSpec::unrooted(9).with_shards(8).with_witness_cap(usize::MAX);
    let sol = ok(solve_min_tree_length(&artifact.output_graph, &spec))?;
    cross_checked(&sol, &artifact.output_graph)?;
    let predicted = ok(expected_subdivided_optimum(&base, &g))?;
    check(sol.best_value == predicted, format!("optimum {} != predicted {predicted}", sol.best_value))?;
    check(sol.witnesses.len() as u64 == sol.optimal_count, "witness list truncated")?;
    for w in &sol.witnesses {
        let s = ok(subdivision_structure(&artifact, w.as_layout().unwrap()))?;
        check(s.on_internal == 0, format!("witness subdivides an internal edge: {}", w.newick()))?;
        check(s.base_value == base.best_value, format!("base tree {} is not optimal", s.base_newick))?;
    }
    Ok(format!(
        "optimum {} = predicted; {} witnesses subdivide only external edges",
        sol.best_value, sol.optimal_count
    ))
}

fn heuristic_adequacy() -> Outcome {
    let mut checked = 0;
    for (name, g) in builtin_graphs() {
        let n = g.vertex_count();
        if n > 7 {
            continue;
        }
        let exact = ok(solve_min_tree_length(&g, &EnumerationSpec::unrooted(n)))?.best_value;
        for seed in 0..5 {
            let cfg = SearchConfig {
                seed,
                restarts: 20,
                ..SearchConfig::default()
            };
            let r = ok(local_search(&g, &cfg))?;
            check(r.value == exact, format!("{name}, seed {seed}: {} != exact {exact}", r.value))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} builtin graphs x 5 seeds match exact optima"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 family optimality", family_optimality),
        ("2 capacity and counting", capacity_and_counting),
        ("3 measure duality and identities", measure_identities),
        ("4 exact solver spot values", exact_spot_values),
        ("5 reduction soundness", reduction_soundness),
        ("6 pendant and rooted lemmas", pendant_and_rooted),
        ("7 simple-graph structural lemma", subdivision_lemma),
        ("8 heuristic adequacy", heuristic_adequacy),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.1}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
