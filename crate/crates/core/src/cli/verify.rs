//! Verification suites behind `treelen verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::CliResult;
use crate::canonical::{build_family_member, is_family_member, FamilyParams};
use crate::corpus;
use crate::error::Error;
use crate::exact::{
    solve_clique_cover, solve_min_sigma_ll, solve_min_tree_length, verify_congested, EnumerationSpec, ExactSolution,
};
use crate::graph::{complement, complete_graph, edge_disjoint_union, write_graph, Multigraph};
use crate::measures::{edge_congestions, sigma_ll, tree_length, tree_length_by_dilation};
use crate::reductions::{
    add_isolated, add_pendant, budget_separation, expected_subdivided_optimum, extract_clique4_answer,
    extract_cliquek_answer, isolated_at_root, pad_to_k_power, pendant_shares_anchor, reduce_clique4_multigraph,
    reduce_cliquek_routing, subdivide_all_edges, subdivision_structure, unpad_cover, Bookkeeping, ReductionArtifact,
};
use crate::search::random_layout;
use crate::tree::newick::layout_to_newick;
use crate::tree::unlabeled_isomorphic;

/// One named check and, on failure, the counterexample.
#[derive(Debug, Clone, Serialize)]
pub(super) struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

fn check(name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn newicks(sol: &ExactSolution) -> Vec<String> {
    sol.witnesses.iter().map(|w| w.newick()).collect()
}

pub(super) fn family(max_leaves: usize, shards: usize) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 3..=max_leaves {
        let sol = solve_min_sigma_ll(&EnumerationSpec::unrooted(n).with_shards(shards))?;
        let (member, _) = build_family_member(FamilyParams::new(3, 3, 2 * n - 2)?)?;
        let passed = sol.optimal_count == 1
            && unlabeled_isomorphic(sol.witnesses[0].as_layout().expect("unrooted").tree().tree(), &member);
        let mut detail = json!({ "leaves": n, "best_value": sol.best_value, "optimal_shapes": sol.optimal_count });
        if !passed {
            detail["witnesses"] = json!(newicks(&sol));
            detail["member_sigma_ll"] = json!(sigma_ll(&member));
        }
        checks.push(check(format!("family-optimal-n{n}"), passed, detail));
    }
    Ok(checks)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_mult: u64) -> CliResult<Multigraph> {
    let mut g = Multigraph::empty(n);
    let p = rng.gen_range(0.2..0.8);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, rng.gen_range(1..=max_mult))?;
            }
        }
    }
    Ok(g)
}

pub(super) fn duality(cases: usize, seed: u64) -> CliResult<Vec<Check>> {
    let names = ["duality", "leaf-congestion", "additivity", "complement-identity"];
    let mut failures: [Option<Value>; 4] = Default::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(3..=12);
        let g = random_graph(&mut rng, n, 3)?;
        let h = random_graph(&mut rng, n, 2)?;
        let simple = random_graph(&mut rng, n, 1)?;
        let layout = random_layout(n, &mut rng)?;
        let dump = |extra: Value| {
            json!({
                "case": case,
                "graph": write_graph(&g),
                "layout": layout_to_newick(&layout),
                "values": extra,
            })
        };
        let by_cut = tree_length(&layout, &g)?;
        let by_dil = tree_length_by_dilation(&layout, &g)?;
        if by_cut != by_dil && failures[0].is_none() {
            failures[0] = Some(dump(json!([by_cut, by_dil])));
        }
        let tree = layout.tree().tree();
        let cong = edge_congestions(&layout, &g)?;
        for (e, &(a, b)) in tree.edges().iter().enumerate() {
            let leaf = [a, b].into_iter().find(|&x| tree.is_leaf(x));
            if let Some(v) = leaf.and_then(|x| layout.vertex_at(x)) {
                if cong[e] != g.weighted_degree(v) && failures[1].is_none() {
                    failures[1] = Some(dump(json!({ "vertex": v, "congestion": cong[e] })));
                }
            }
        }
        let union = tree_length(&layout, &edge_disjoint_union(&g, &h)?)?;
        let parts = by_cut + tree_length(&layout, &h)?;
        if union != parts && failures[2].is_none() {
            failures[2] = Some(dump(json!({ "union": union, "sum": parts, "other": write_graph(&h) })));
        }
        let total = tree_length(&layout, &simple)? + tree_length(&layout, &complement(&simple)?)?;
        if total != sigma_ll(tree) && failures[3].is_none() {
            failures[3] = Some(dump(json!({ "sum": total, "sigma_ll": sigma_ll(tree), "simple": write_graph(&simple) })));
        }
    }
    Ok(names
        .iter()
        .zip(failures)
        .map(|(name, f)| match f {
            None => check(*name, true, json!({ "cases": cases })),
            Some(dump) => check(*name, false, dump),
        })
        .collect())
}

fn cover_sizes(n: usize, k: usize) -> Vec<usize> {
    vec![n / k; k]
}

fn extraction_checks(
    artifact: &ReductionArtifact,
    sol: &ExactSolution,
    extracted: Result<Option<crate::VertexPartition>, Error>,
    k: usize,
) -> CliResult<Vec<Check>> {
    let g = &artifact.input_graph;
    let oracle = solve_clique_cover(g, &cover_sizes(g.vertex_count(), k))?;
    let mut checks = Vec::new();
    let got = match extracted {
        Ok(got) => got,
        Err(Error::Soundness(msg)) => {
            checks.push(check("witnesses-in-family", false, json!({ "message": msg, "witnesses": newicks(sol) })));
            return Ok(checks);
        }
        Err(e) => return Err(e.into()),
    };
    checks.push(check("witnesses-in-family", true, json!({ "witnesses": sol.witnesses.len() })));
    checks.push(check(
        "agrees-with-cover",
        got.is_some() == oracle.is_some(),
        json!({
            "reduction": got.as_ref().map(|p| p.blocks().to_vec()),
            "oracle": oracle.as_ref().map(|p| p.blocks().to_vec()),
            "best_value": sol.best_value,
        }),
    ));
    if let Some(p) = &got {
        checks.push(check("blocks-are-cliques", p.all_cliques(g), json!({ "blocks": p.blocks() })));
    }
    let budget = budget_separation(artifact)?;
    checks.push(check("budget-separation", budget.holds, json!(budget)));
    Ok(checks)
}

/// Soundness checks of one reduction artifact, chosen by its kind.
pub(super) fn check_artifact(artifact: &ReductionArtifact, shards: usize) -> CliResult<Vec<Check>> {
    let g = &artifact.input_graph;
    let out = &artifact.output_graph;
    let n = g.vertex_count();
    match artifact.bookkeeping {
        Bookkeeping::Clique4Multigraph { .. } => {
            let sol = solve_min_tree_length(out, &EnumerationSpec::unrooted(n).with_shards(shards))?;
            extraction_checks(artifact, &sol, extract_clique4_answer(artifact, &sol), 4)
        }
        Bookkeeping::CliquekRouting { k, .. } => {
            let sol = solve_min_tree_length(out, &EnumerationSpec::routing(n, k).with_shards(shards))?;
            extraction_checks(artifact, &sol, extract_cliquek_answer(artifact, &sol), k)
        }
        Bookkeeping::SubdivisionSimple { .. } => {
            let base = solve_min_tree_length(g, &EnumerationSpec::unrooted(n).with_shards(shards))?;
            let spec = EnumerationSpec::unrooted(out.vertex_count())
                .with_shards(shards)
                .with_witness_cap(usize::MAX);
            let sol = solve_min_tree_length(out, &spec)?;
            let predicted = match expected_subdivided_optimum(&base, g) {
                Ok(v) => Some(v),
                Err(Error::InvalidArgument(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let mut bad = Vec::new();
            for w in &sol.witnesses {
                let s = subdivision_structure(artifact, w.as_layout().expect("unrooted"))?;
                if s.on_internal != 0 || s.base_value != base.best_value {
                    bad.push(json!({ "witness": w.newick(), "structure": s }));
                }
            }
            let mut checks = vec![check(
                "external-edges-only",
                bad.is_empty(),
                json!({ "witnesses": sol.witnesses.len(), "violations": bad }),
            )];
            if let Some(predicted) = predicted {
                checks.push(check(
                    "predicted-optimum",
                    sol.best_value == predicted,
                    json!({ "optimum": sol.best_value, "predicted": predicted, "base_optimum": base.best_value }),
                ));
            }
            Ok(checks)
        }
        Bookkeeping::Pendant { .. } => {
            let base = solve_min_tree_length(g, &EnumerationSpec::unrooted(n).with_shards(shards))?;
            let sol = solve_min_tree_length(out, &EnumerationSpec::unrooted(n + 1).with_shards(shards))?;
            let mut bad = Vec::new();
            for w in &sol.witnesses {
                if !pendant_shares_anchor(artifact, w.as_layout().expect("unrooted"))? {
                    bad.push(w.newick());
                }
            }
            let mut checks = vec![check(
                "pendant-shares-anchor",
                bad.is_empty(),
                json!({ "witnesses": sol.witnesses.len(), "violations": bad }),
            )];
            let (congested, min_congestion) = verify_congested(g, &EnumerationSpec::unrooted(n).with_shards(shards))?;
            if congested {
                checks.push(check(
                    "pendant-adds-two",
                    sol.best_value == base.best_value + 2,
                    json!({
                        "base_optimum": base.best_value,
                        "pendant_optimum": sol.best_value,
                        "gain": sol.best_value - base.best_value,
                        "min_degree": g.min_degree(),
                        "min_congestion": min_congestion,
                    }),
                ));
            }
            Ok(checks)
        }
        Bookkeeping::RootedIsolated { .. } => {
            if g.min_degree() != 1 {
                return Ok(vec![check(
                    "min-degree-one",
                    false,
                    json!({ "min_degree": g.min_degree(), "message": "the rooted lemma assumes minimum degree 1" }),
                )]);
            }
            let base = solve_min_tree_length(g, &EnumerationSpec::unrooted(n).with_shards(shards))?;
            let sol = solve_min_tree_length(out, &EnumerationSpec::rooted(n + 1).with_shards(shards))?;
            let mut bad = Vec::new();
            for w in &sol.witnesses {
                if !isolated_at_root(artifact, w.as_rooted().expect("rooted"))? {
                    bad.push(w.newick());
                }
            }
            Ok(vec![
                check(
                    "rooted-plus-one",
                    sol.best_value == base.best_value + 1,
                    json!({ "unrooted_optimum": base.best_value, "rooted_optimum": sol.best_value }),
                ),
                check(
                    "isolated-at-root",
                    bad.is_empty(),
                    json!({ "witnesses": sol.witnesses.len(), "violations": bad }),
                ),
            ])
        }
        Bookkeeping::PadK { k, block_size, .. } => {
            let original = solve_clique_cover(g, &cover_sizes(n, k))?;
            let padded = solve_clique_cover(out, &vec![block_size; k])?;
            let mut checks = vec![check(
                "padding-preserves-answer",
                original.is_some() == padded.is_some(),
                json!({ "original": original.is_some(), "padded": padded.is_some() }),
            )];
            if let Some(p) = &padded {
                let back = unpad_cover(artifact, p)?;
                let valid = back.all_cliques(g) && back.sizes().iter().all(|&s| s == n / k);
                checks.push(check("unpadded-cover-valid", valid, json!({ "blocks": back.blocks() })));
            }
            Ok(checks)
        }
    }
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> impl Iterator<Item = Check> + '_ {
    checks.into_iter().map(move |mut c| {
        c.name = format!("{prefix}/{}", c.name);
        c
    })
}

pub(super) fn reductions(shards: usize) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, g) in corpus::builtin_graphs() {
        let n = g.vertex_count();
        if !g.is_simple() || g.edge_total() == 0 {
            continue;
        }
        if n == 4 || n == 8 {
            let a = reduce_clique4_multigraph(&g)?;
            checks.extend(prefixed(&format!("clique4:{name}"), check_artifact(&a, shards)?));
        }
        if n == 6 {
            let a = reduce_cliquek_routing(&g, 3)?;
            checks.extend(prefixed(&format!("cliquek:{name}"), check_artifact(&a, shards)?));
        }
    }
    for name in ["cycle:9", "complete:9"] {
        let a = pad_to_k_power(&corpus::builtin(name)?, 3)?;
        checks.extend(prefixed(&format!("pad:{name}"), check_artifact(&a, shards)?));
    }
    let a = subdivide_all_edges(&complete_graph(3, 2)?)?;
    checks.extend(prefixed("subdivide:complete:3x2", check_artifact(&a, shards)?));
    Ok(checks)
}

pub(super) fn rooted() -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for n in [4, 5] {
        let pendant = add_pendant(&complete_graph(n, 1)?, 0)?;
        checks.extend(prefixed(&format!("pendant:complete:{n}"), check_artifact(&pendant, 8)?));
        let isolated = add_isolated(&pendant.output_graph);
        checks.extend(prefixed(&format!("isolated:complete:{n}+pendant"), check_artifact(&isolated, 8)?));
    }
    let mut worse = Vec::new();
    let mut compared = 0;
    for (name, g) in corpus::builtin_graphs() {
        let n = g.vertex_count();
        if n > 6 {
            continue;
        }
        let unrooted = solve_min_tree_length(&g, &EnumerationSpec::unrooted(n))?.best_value;
        let rooted = solve_min_tree_length(&g, &EnumerationSpec::rooted(n))?.best_value;
        compared += 1;
        if rooted < unrooted {
            worse.push(json!({ "graph": name, "rooted": rooted, "unrooted": unrooted }));
        }
    }
    checks.push(check(
        "rooted-at-least-unrooted",
        worse.is_empty(),
        json!({ "graphs": compared, "violations": worse }),
    ));
    Ok(checks)
}

pub(super) fn routing(max_leaves: usize, shards: usize) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for delta in [3, 4] {
        for n in 3..=max_leaves {
            let sol = solve_min_sigma_ll(&EnumerationSpec::routing(n, delta).with_shards(shards))?;
            let mut members = true;
            for w in &sol.witnesses {
                members &= is_family_member(w.as_layout().expect("unrooted").tree().tree(), delta, delta)?;
            }
            let passed = sol.optimal_count == 1 && members;
            let mut detail = json!({ "leaves": n, "best_value": sol.best_value, "optimal_shapes": sol.optimal_count });
            if !passed {
                detail["witnesses"] = json!(newicks(&sol));
            }
            checks.push(check(format!("routing-family-d{delta}-n{n}"), passed, detail));
        }
    }
    Ok(checks)
}
