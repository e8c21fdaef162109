//! Hardness-proof gadgets and their empirical soundness checks.
//!
//! Each construction returns the output graph together with the
//! bookkeeping needed to pull a solution of the output back to the input.

use serde::{Deserialize, Serialize};

use crate::canonical::is_family_member;
use crate::error::{invalid, Error, Result};
use crate::exact::{enumerate_trees, ExactSolution, EnumerationSpec};
use crate::graph::{complete_graph, edge_disjoint_union, Multigraph, VertexPartition};
use crate::measures::{sigma_ll, tree_length};
use crate::tree::{Layout, LeafTree, RootedBinaryTree, Tree};

/// Kind-specific data of a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Bookkeeping {
    /// `big_m` parallel edges were added between every pair.
    Clique4Multigraph { edges: u64, big_m: u64 },
    /// Vertex `base_vertices + i` subdivides an edge between `subdivided[i]`.
    SubdivisionSimple {
        base_vertices: usize,
        subdivided: Vec<[usize; 2]>,
    },
    Pendant { anchor: usize, pendant: usize },
    RootedIsolated { isolated: usize },
    /// Vertex `original + i` is padding in component `component[i]`.
    PadK {
        original: usize,
        k: usize,
        l: u32,
        block_size: usize,
        component: Vec<usize>,
    },
    CliquekRouting { k: usize, l: u32, edges: u64, big_m: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub input_graph: Multigraph,
    pub output_graph: Multigraph,
    pub bookkeeping: Bookkeeping,
}

impl ReductionArtifact {
    pub fn kind(&self) -> &'static str {
        match self.bookkeeping {
            Bookkeeping::Clique4Multigraph { .. } => "clique4-multigraph",
            Bookkeeping::SubdivisionSimple { .. } => "subdivision-simple",
            Bookkeeping::Pendant { .. } => "pendant",
            Bookkeeping::RootedIsolated { .. } => "rooted-isolated",
            Bookkeeping::PadK { .. } => "pad-k",
            Bookkeeping::CliquekRouting { .. } => "cliquek-routing",
        }
    }
}

fn blow_up(g: &Multigraph) -> Result<(Multigraph, u64, u64)> {
    let n = g.vertex_count();
    let m = g.edge_total();
    if m == 0 {
        return invalid("the input graph needs at least one edge");
    }
    let big_m = m * (2 * n as u64 - 2);
    let out = edge_disjoint_union(g, &complete_graph(n, big_m)?)?;
    Ok((out, m, big_m))
}

/// Adds `M = m(2n − 2)` parallel edges between every pair of vertices.
pub fn reduce_clique4_multigraph(g: &Multigraph) -> Result<ReductionArtifact> {
    let n = g.vertex_count();
    if !g.is_simple() {
        return invalid("the 4-clique reduction needs a simple graph");
    }
    if n < 4 || !n.is_power_of_two() {
        return invalid(format!("vertex count must be a power of two >= 4, got {n}"));
    }
    let (out, m, big_m) = blow_up(g)?;
    Ok(ReductionArtifact {
        input_graph: g.clone(),
        output_graph: out,
        bookkeeping: Bookkeeping::Clique4Multigraph { edges: m, big_m },
    })
}

/// Vertex sets of the components left after deleting `centers`, ordered by
/// smallest vertex.
fn blocks_without(layout: &Layout, centers: &[usize]) -> Vec<Vec<usize>> {
    let tree = layout.tree().tree();
    let mut seen = vec![false; tree.node_count()];
    for &c in centers {
        seen[c] = true;
    }
    let mut blocks = Vec::new();
    for start in 0..tree.node_count() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut block = Vec::new();
        while let Some(x) = stack.pop() {
            block.extend(layout.vertex_at(x));
            for &y in tree.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if !block.is_empty() {
            block.sort_unstable();
            blocks.push(block);
        }
    }
    blocks.sort();
    blocks
}

fn extract(
    artifact: &ReductionArtifact,
    solution: &ExactSolution,
    r: usize,
    delta: usize,
    parts: usize,
) -> Result<Option<VertexPartition>> {
    let g = &artifact.input_graph;
    let n = g.vertex_count();
    for w in &solution.witnesses {
        let Some(layout) = w.as_layout() else {
            return invalid("answer extraction needs unrooted witnesses");
        };
        if layout.vertex_count() != n {
            return invalid("witness does not match the reduced instance");
        }
        let tree = layout.tree().tree();
        if !is_family_member(tree, r, delta)? {
            return Err(Error::Soundness(format!(
                "optimal witness {} is not in the level-filled family",
                crate::tree::newick::layout_to_newick(layout)
            )));
        }
        let blocks = blocks_without(layout, &tree.central_nodes());
        if blocks.len() != parts || blocks.iter().any(|b| b.len() != n / parts) {
            return Err(Error::Soundness(format!(
                "removing the central nodes left blocks of sizes {:?}",
                blocks.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let partition = VertexPartition::new(n, blocks)?;
        if partition.all_cliques(g) {
            return Ok(Some(partition));
        }
    }
    Ok(None)
}

/// Reads a 4-clique cover off the optimal layouts of the reduced instance:
/// deleting the two central nodes of a family tree leaves four blocks.
pub fn extract_clique4_answer(
    artifact: &ReductionArtifact,
    solution: &ExactSolution,
) -> Result<Option<VertexPartition>> {
    if !matches!(artifact.bookkeeping, Bookkeeping::Clique4Multigraph { .. }) {
        return invalid("not a 4-clique reduction");
    }
    extract(artifact, solution, 3, 3, 4)
}

/// Outcome of the exhaustive budget sweep on a reduced instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub big_m: u64,
    /// Largest contribution of the original edges over all layouts.
    pub max_original: u64,
    /// `(2n − 3)·m`, the bound used in place of per-edge congestion.
    pub original_bound: u64,
    pub family_sigma: u64,
    /// Smallest σ_LL over layouts outside the family.
    pub min_other_sigma: Option<u64>,
    pub layouts: u64,
    pub holds: bool,
}

/// Checks that every layout outside the family pays at least `M` more on
/// the complete part than the family layouts, while the original edges
/// contribute less than `M` to any layout.
pub fn budget_separation(artifact: &ReductionArtifact) -> Result<BudgetReport> {
    let (m, big_m, r, delta, spec) = match artifact.bookkeeping {
        Bookkeeping::Clique4Multigraph { edges, big_m } => {
            (edges, big_m, 3, 3, EnumerationSpec::unrooted(artifact.input_graph.vertex_count()))
        }
        Bookkeeping::CliquekRouting { k, edges, big_m, .. } => (
            edges,
            big_m,
            k,
            k,
            EnumerationSpec::routing(artifact.input_graph.vertex_count(), k),
        ),
        _ => return invalid("budget separation applies to clique reductions"),
    };
    let g = &artifact.input_graph;
    let n = g.vertex_count() as u64;
    let mut max_original = 0;
    let mut family_sigma = None;
    let mut min_other = None::<u64>;
    let mut layouts = 0;
    let mut err = None;
    enumerate_trees(&spec, |t| {
        let layout = t.as_layout().expect("unrooted");
        layouts += 1;
        match tree_length(layout, g) {
            Ok(v) => max_original = max_original.max(v),
            Err(e) => err = Some(e),
        }
        let s = sigma_ll(layout.tree().tree());
        match is_family_member(layout.tree().tree(), r, delta) {
            Ok(true) => family_sigma = Some(s),
            Ok(false) => min_other = Some(min_other.map_or(s, |x| x.min(s))),
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let family_sigma = family_sigma.ok_or_else(|| Error::Soundness("no family layout enumerated".into()))?;
    let separated = min_other.is_none_or(|s| s * big_m >= family_sigma * big_m + big_m);
    Ok(BudgetReport {
        big_m,
        max_original,
        original_bound: (2 * n - 3) * m,
        family_sigma,
        min_other_sigma: min_other,
        layouts,
        holds: separated && max_original < big_m,
    })
}

/// Replaces every unit of multiplicity by a path of length two through a
/// new vertex, giving a simple graph.
pub fn subdivide_all_edges(g: &Multigraph) -> Result<ReductionArtifact> {
    let n = g.vertex_count();
    let mut subdivided = Vec::new();
    for (u, v, m) in g.edges() {
        for _ in 0..m {
            subdivided.push([u, v]);
        }
    }
    let mut out = Multigraph::empty(n + subdivided.len());
    for (i, &[u, v]) in subdivided.iter().enumerate() {
        out.add_edge(u, n + i, 1)?;
        out.add_edge(n + i, v, 1)?;
    }
    Ok(ReductionArtifact {
        input_graph: g.clone(),
        output_graph: out,
        bookkeeping: Bookkeeping::SubdivisionSimple {
            base_vertices: n,
            subdivided,
        },
    })
}

/// Total congestion of the most balanced rooted binary tree over `leaves`
/// degree-2 leaves, including the edge above its root: every edge carries
/// twice the number of leaves below it.
pub fn balanced_subtree_congestion(leaves: u64) -> u64 {
    match leaves {
        0 => 0,
        1 => 2,
        s => 2 * s + balanced_subtree_congestion(s.div_ceil(2)) + balanced_subtree_congestion(s / 2),
    }
}

/// Predicted optimum of the subdivided complete multigraph with even
/// multiplicity `l`: `LA(T, G) + n(𝕋 + l(n − 1))`, where each base vertex
/// carries a subtree of `(l/2)(n − 1)` subdivision leaves.
pub fn expected_subdivided_optimum(base: &ExactSolution, g: &Multigraph) -> Result<u64> {
    let n = g.vertex_count();
    if n < 2 {
        return invalid("need at least two vertices");
    }
    let l = g.multiplicity(0, 1);
    if l == 0 || !g.is_clique(&(0..n).collect::<Vec<_>>()) || g.edges().any(|(_, _, m)| m != l) {
        return invalid("expected a complete multigraph with uniform multiplicity");
    }
    if l % 2 == 1 {
        return invalid(format!("multiplicity must be even, got {l}"));
    }
    let n = n as u64;
    let t = balanced_subtree_congestion(l / 2 * (n - 1));
    Ok(base.best_value + n * (t + l * (n - 1)))
}

/// Where the subdivision vertices of a layout of the subdivided graph sit
/// relative to the tree spanned by the base vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionStructure {
    /// Subdivision vertices hanging off a path that suppresses to an
    /// external edge of the base tree.
    pub on_external: usize,
    pub on_internal: usize,
    /// Tree length of the base tree on the base graph.
    pub base_value: u64,
    pub base_newick: String,
}

/// Prunes the subdivision leaves from `layout` and classifies where each
/// one was attached.
pub fn subdivision_structure(artifact: &ReductionArtifact, layout: &Layout) -> Result<SubdivisionStructure> {
    let Bookkeeping::SubdivisionSimple { base_vertices, .. } = artifact.bookkeeping else {
        return invalid("not a subdivision reduction");
    };
    if layout.vertex_count() != artifact.output_graph.vertex_count() {
        return invalid("layout does not match the subdivided graph");
    }
    if base_vertices < 3 {
        return invalid("base trees need at least 3 vertices");
    }
    let tree = layout.tree().tree();
    let nodes = tree.node_count();
    let is_base = |x: usize| layout.vertex_at(x).is_some_and(|v| v < base_vertices);
    // Steiner tree of the base leaves: repeatedly strip other leaves
    let mut alive = vec![true; nodes];
    let mut deg: Vec<usize> = (0..nodes).map(|x| tree.degree(x)).collect();
    let mut stack: Vec<usize> = (0..nodes).filter(|&x| deg[x] == 1 && !is_base(x)).collect();
    while let Some(x) = stack.pop() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for &y in tree.neighbors(x) {
            if alive[y] {
                deg[y] -= 1;
                if deg[y] == 1 && !is_base(y) {
                    stack.push(y);
                }
            }
        }
    }
    // branch points of the Steiner tree become base-tree nodes
    let kept: Vec<bool> = (0..nodes).map(|x| alive[x] && deg[x] != 2).collect();
    let segment_end = |mut prev: usize, mut x: usize| {
        while !kept[x] {
            let next = tree
                .neighbors(x)
                .iter()
                .copied()
                .find(|&y| alive[y] && y != prev)
                .expect("degree-2 Steiner node");
            prev = x;
            x = next;
        }
        x
    };
    let mut base_edges = Vec::new();
    for x in (0..nodes).filter(|&x| kept[x]) {
        for &y in tree.neighbors(x) {
            if alive[y] {
                let z = segment_end(x, y);
                if x < z {
                    base_edges.push((x, z));
                }
            }
        }
    }
    let mut on_external = 0;
    let mut on_internal = 0;
    for x in 0..nodes {
        let Some(v) = layout.vertex_at(x) else { continue };
        if v < base_vertices {
            continue;
        }
        // the path from any base leaf to x leaves the Steiner tree at the
        // attachment point
        let (parent, _) = tree.rooted_order(x);
        let mut a = layout.leaf_of(0);
        while let Some(p) = parent[a] {
            if !alive[p] {
                break;
            }
            a = p;
        }
        let external = if kept[a] {
            // attached at a base node itself
            is_base(a)
        } else {
            let mut ends = tree
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&y| alive[y])
                .map(|y| segment_end(a, y));
            let (p, q) = (ends.next().unwrap(), ends.next().unwrap());
            is_base(p) || is_base(q)
        };
        if external {
            on_external += 1;
        } else {
            on_internal += 1;
        }
    }
    let mut map = vec![None; nodes];
    let mut next = 0;
    for x in (0..nodes).filter(|&x| kept[x]) {
        map[x] = Some(next);
        next += 1;
    }
    let edges = base_edges
        .iter()
        .map(|&(a, b)| (map[a].unwrap(), map[b].unwrap()))
        .collect();
    let base_tree = Tree::from_edges(next, edges)?;
    let phi = (0..base_vertices)
        .map(|v| map[layout.leaf_of(v)].expect("base leaves are kept"))
        .collect();
    let base_layout = Layout::new(LeafTree::cubic(base_tree)?, phi)?;
    Ok(SubdivisionStructure {
        on_external,
        on_internal,
        base_value: tree_length(&base_layout, &artifact.input_graph)?,
        base_newick: crate::tree::newick::layout_to_newick(&base_layout),
    })
}

/// Adds a vertex of degree one attached to `anchor`.
pub fn add_pendant(g: &Multigraph, anchor: usize) -> Result<ReductionArtifact> {
    let n = g.vertex_count();
    if anchor >= n {
        return invalid(format!("vertex {anchor} is not in the graph"));
    }
    let mut out = g.with_extra_vertices(1);
    out.add_edge(anchor, n, 1)?;
    Ok(ReductionArtifact {
        input_graph: g.clone(),
        output_graph: out,
        bookkeeping: Bookkeeping::Pendant { anchor, pendant: n },
    })
}

/// Whether the pendant vertex and its anchor form a cherry of `layout`.
pub fn pendant_shares_anchor(artifact: &ReductionArtifact, layout: &Layout) -> Result<bool> {
    let Bookkeeping::Pendant { anchor, pendant } = artifact.bookkeeping else {
        return invalid("not a pendant reduction");
    };
    let tree = layout.tree().tree();
    let w = tree.neighbors(layout.leaf_of(pendant))[0];
    Ok(tree.neighbors(w).contains(&layout.leaf_of(anchor)))
}

/// Adds one isolated vertex.
pub fn add_isolated(g: &Multigraph) -> ReductionArtifact {
    let n = g.vertex_count();
    ReductionArtifact {
        input_graph: g.clone(),
        output_graph: g.with_extra_vertices(1),
        bookkeeping: Bookkeeping::RootedIsolated { isolated: n },
    }
}

/// Whether the isolated vertex's leaf is a child of the root.
pub fn isolated_at_root(artifact: &ReductionArtifact, b: &RootedBinaryTree) -> Result<bool> {
    let Bookkeeping::RootedIsolated { isolated } = artifact.bookkeeping else {
        return invalid("not an isolated-vertex reduction");
    };
    Ok(b.parent(b.leaf_of(isolated)) == Some(b.root()))
}

/// Pads a graph on `k·n′` vertices to `k(k − 1)^l` vertices, `l` the
/// smallest positive integer with `(k − 1)^l ≥ n′`. The padding forms `k`
/// disjoint cliques of `(k − 1)^l − n′` vertices, each padding vertex
/// adjacent to every original vertex.
pub fn pad_to_k_power(g: &Multigraph, k: usize) -> Result<ReductionArtifact> {
    let n = g.vertex_count();
    if k < 3 {
        return invalid(format!("k must be at least 3, got {k}"));
    }
    if n == 0 || !n.is_multiple_of(k) {
        return invalid(format!("k = {k} does not divide n = {n}"));
    }
    if !g.is_simple() {
        return invalid("padding needs a simple graph");
    }
    let part = n / k;
    let mut l = 1u32;
    let mut block = k - 1;
    while block < part {
        block *= k - 1;
        l += 1;
    }
    let per = block - part;
    let mut out = g.with_extra_vertices(k * per);
    let mut component = Vec::with_capacity(k * per);
    for c in 0..k {
        let members: Vec<usize> = (0..per).map(|i| n + c * per + i).collect();
        for (i, &x) in members.iter().enumerate() {
            component.push(c);
            for &y in &members[i + 1..] {
                out.add_edge(x, y, 1)?;
            }
            for v in 0..n {
                out.add_edge(x, v, 1)?;
            }
        }
    }
    Ok(ReductionArtifact {
        input_graph: g.clone(),
        output_graph: out,
        bookkeeping: Bookkeeping::PadK {
            original: n,
            k,
            l,
            block_size: block,
            component,
        },
    })
}

/// Restricts a cover of the padded graph to the original vertices.
pub fn unpad_cover(artifact: &ReductionArtifact, cover: &VertexPartition) -> Result<VertexPartition> {
    let Bookkeeping::PadK { original, .. } = artifact.bookkeeping else {
        return invalid("not a padding reduction");
    };
    let blocks = cover
        .blocks()
        .iter()
        .map(|b| b.iter().copied().filter(|&v| v < original).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    VertexPartition::new(original, blocks)
}

/// Same blow-up as the 4-clique reduction, for routing trees of degree `k`
/// on `n = k(k − 1)^l` vertices.
pub fn reduce_cliquek_routing(g: &Multigraph, k: usize) -> Result<ReductionArtifact> {
    let n = g.vertex_count();
    if k < 3 {
        return invalid(format!("k must be at least 3, got {k}"));
    }
    if !g.is_simple() {
        return invalid("the k-clique reduction needs a simple graph");
    }
    let mut l = 0u32;
    let mut size = k;
    while size < n {
        size *= k - 1;
        l += 1;
    }
    if size != n || l == 0 {
        return invalid(format!("vertex count must be k(k-1)^l with l >= 1, got {n} for k = {k}"));
    }
    let (out, m, big_m) = blow_up(g)?;
    Ok(ReductionArtifact {
        input_graph: g.clone(),
        output_graph: out,
        bookkeeping: Bookkeeping::CliquekRouting { k, l, edges: m, big_m },
    })
}

/// Removes the single central node of each optimal routing tree and reads
/// the `k` leaf blocks as a clique cover.
pub fn extract_cliquek_answer(
    artifact: &ReductionArtifact,
    solution: &ExactSolution,
) -> Result<Option<VertexPartition>> {
    let Bookkeeping::CliquekRouting { k, .. } = artifact.bookkeeping else {
        return invalid("not a k-clique routing reduction");
    };
    extract(artifact, solution, k, k, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cycle, star};
    use crate::exact::{solve_clique_cover, solve_min_tree_length};

    #[test]
    fn clique4_blow_up() {
        let a = reduce_clique4_multigraph(&cycle(8).unwrap()).unwrap();
        assert_eq!(a.bookkeeping, Bookkeeping::Clique4Multigraph { edges: 8, big_m: 112 });
        assert_eq!(a.output_graph.multiplicity(0, 1), 113);
        assert_eq!(a.output_graph.multiplicity(0, 2), 112);
        let k4 = complete_graph(4, 1).unwrap();
        let b = reduce_clique4_multigraph(&k4).unwrap();
        assert_eq!(b.bookkeeping, Bookkeeping::Clique4Multigraph { edges: 6, big_m: 36 });
        assert!(reduce_clique4_multigraph(&cycle(6).unwrap()).is_err());
        assert!(reduce_clique4_multigraph(&complete_graph(4, 2).unwrap()).is_err());
    }

    #[test]
    fn clique4_extraction_small() {
        // two disjoint edges plus a path: yes instance {01}{23} at n = 4 means
        // blocks of one vertex, always cliques
        let g = Multigraph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let a = reduce_clique4_multigraph(&g).unwrap();
        let sol = solve_min_tree_length(&a.output_graph, &EnumerationSpec::unrooted(4)).unwrap();
        let p = extract_clique4_answer(&a, &sol).unwrap().unwrap();
        assert_eq!(p.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn clique4_cycle_and_star() {
        for (g, yes) in [(cycle(8).unwrap(), true), (star(8).unwrap(), false)] {
            let a = reduce_clique4_multigraph(&g).unwrap();
            let sol = solve_min_tree_length(&a.output_graph, &EnumerationSpec::unrooted(8).with_shards(4)).unwrap();
            let got = extract_clique4_answer(&a, &sol).unwrap();
            let oracle = solve_clique_cover(&g, &[2, 2, 2, 2]).unwrap();
            assert_eq!(got.is_some(), yes);
            assert_eq!(oracle.is_some(), yes);
            if let Some(p) = got {
                assert!(p.all_cliques(&g));
            }
        }
    }

    #[test]
    fn budget_sweep_small() {
        let a = reduce_clique4_multigraph(&cycle(4).unwrap()).unwrap();
        let r = budget_separation(&a).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.layouts, 3);
        assert!(r.max_original <= r.original_bound);
    }

    #[test]
    fn subdivision_shapes() {
        let k3 = complete_graph(3, 1).unwrap();
        let a = subdivide_all_edges(&k3).unwrap();
        assert_eq!(a.output_graph.vertex_count(), 6);
        assert_eq!(a.output_graph.pair_count(), 6);
        assert!(a.output_graph.is_simple());
        assert!((3..6).all(|x| a.output_graph.weighted_degree(x) == 2));
        let double = complete_graph(2, 2).unwrap();
        let b = subdivide_all_edges(&double).unwrap();
        assert_eq!(b.output_graph.vertex_count(), 4);
        assert!((0..4).all(|x| b.output_graph.weighted_degree(x) == 2));
        assert!(b.output_graph.is_connected());
    }

    #[test]
    fn subtree_congestion() {
        assert_eq!(balanced_subtree_congestion(1), 2);
        assert_eq!(balanced_subtree_congestion(2), 8);
        assert_eq!(balanced_subtree_congestion(3), 6 + 8 + 2);
        assert_eq!(balanced_subtree_congestion(4), 8 + 8 + 8);
    }

    #[test]
    fn subdivided_prediction() {
        let g = complete_graph(3, 2).unwrap();
        let base = solve_min_tree_length(&g, &EnumerationSpec::unrooted(3)).unwrap();
        assert_eq!(base.best_value, 12);
        assert_eq!(expected_subdivided_optimum(&base, &g).unwrap(), 48);
        assert!(expected_subdivided_optimum(&base, &complete_graph(3, 1).unwrap()).is_err());
    }

    #[test]
    fn pendant_and_isolated() {
        let k4 = complete_graph(4, 1).unwrap();
        let p = add_pendant(&k4, 0).unwrap();
        assert_eq!((p.output_graph.vertex_count(), p.output_graph.pair_count()), (5, 7));
        assert!(add_pendant(&k4, 4).is_err());
        let i = add_isolated(&k4);
        assert_eq!((i.output_graph.vertex_count(), i.output_graph.pair_count()), (5, 6));
    }

    #[test]
    fn padding_sizes() {
        let g6 = crate::corpus::complete_minus_matching(6).unwrap();
        let a = pad_to_k_power(&g6, 3).unwrap();
        assert_eq!(a.output_graph.vertex_count(), 6);
        let g9 = Multigraph::from_pairs(9, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (6, 8)]).unwrap();
        let b = pad_to_k_power(&g9, 3).unwrap();
        assert_eq!(b.output_graph.vertex_count(), 12);
        let Bookkeeping::PadK { l, block_size, .. } = b.bookkeeping else { panic!() };
        assert_eq!((l, block_size), (2, 4));
        let cover = solve_clique_cover(&b.output_graph, &[4, 4, 4]).unwrap().unwrap();
        let back = unpad_cover(&b, &cover).unwrap();
        assert!(back.all_cliques(&g9));
        assert!(pad_to_k_power(&g9, 4).is_err());
    }

    #[test]
    fn cliquek_routing_preconditions() {
        let g = crate::corpus::complete_minus_matching(6).unwrap();
        assert!(reduce_cliquek_routing(&g, 3).is_ok());
        assert!(reduce_cliquek_routing(&cycle(8).unwrap(), 3).is_err());
        assert!(reduce_cliquek_routing(&cycle(3).unwrap(), 3).is_err());
    }
}
