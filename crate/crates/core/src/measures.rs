//! Dilation, congestion, tree length, leaf distance sums and the Wiener index.
//!
//! Tree length can be read two ways: as total dilation over graph edges, or
//! as total congestion over tree edges. Both are exposed; the congestion
//! route is the fast one (one post-order pass building vertex sets).

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::Multigraph;
use crate::tree::{EdgeClass, Layout, RootedBinaryTree, Tree};

/// Dense vertex set, one bit per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub(crate) fn new(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    pub(crate) fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub(crate) fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn complement(&self, n: usize) -> VertexSet {
        let mut out = VertexSet::new(n);
        for v in 0..n {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }
}

/// Total multiplicity of graph edges with exactly one endpoint in `side`.
pub(crate) fn cut_weight(g: &Multigraph, side: &VertexSet) -> u64 {
    g.edges()
        .filter(|&(u, v, _)| side.contains(u) != side.contains(v))
        .map(|(_, _, m)| m)
        .sum()
}

fn check_sizes(layout: &Layout, g: &Multigraph) -> Result<()> {
    if layout.vertex_count() != g.vertex_count() {
        return invalid(format!(
            "layout has {} leaves but the graph has {} vertices",
            layout.vertex_count(),
            g.vertex_count()
        ));
    }
    Ok(())
}

/// For every tree edge, the vertices on the side of its second endpoint.
pub(crate) fn edge_sides(layout: &Layout) -> Vec<VertexSet> {
    let tree = layout.tree().tree();
    let n = layout.vertex_count();
    let (parent, order) = tree.rooted_order(0);
    let mut below: Vec<VertexSet> = vec![VertexSet::new(n); tree.node_count()];
    for &x in order.iter().rev() {
        if let Some(v) = layout.vertex_at(x) {
            below[x].insert(v);
        }
        if let Some(p) = parent[x] {
            let child = below[x].clone();
            below[p].union_with(&child);
        }
    }
    tree.edges()
        .iter()
        .map(|&(a, b)| {
            if parent[b] == Some(a) {
                below[b].clone()
            } else {
                // b is the parent, so a's subtree is the a-side; complement it
                let mut s = VertexSet::new(n);
                for v in 0..n {
                    if !below[a].contains(v) {
                        s.insert(v);
                    }
                }
                s
            }
        })
        .collect()
}

/// Tree distance between the leaves hosting the endpoints of graph edge `{u, v}`.
pub fn dilation(layout: &Layout, g: &Multigraph, u: usize, v: usize) -> Result<u64> {
    check_sizes(layout, g)?;
    if u >= g.vertex_count() || v >= g.vertex_count() || g.multiplicity(u, v) == 0 {
        return invalid(format!("{{{u},{v}}} is not an edge of the graph"));
    }
    Ok(layout
        .tree()
        .tree()
        .distance(layout.leaf_of(u), layout.leaf_of(v))? as u64)
}

/// Number of graph edges (with multiplicity) routed across tree edge `edge`.
pub fn congestion(layout: &Layout, g: &Multigraph, edge: usize) -> Result<u64> {
    check_sizes(layout, g)?;
    if edge >= layout.tree().tree().edge_count() {
        return invalid(format!("no tree edge with index {edge}"));
    }
    Ok(cut_weight(g, &edge_sides(layout)[edge]))
}

/// Congestion of every tree edge, indexed like the tree's edge list.
pub fn edge_congestions(layout: &Layout, g: &Multigraph) -> Result<Vec<u64>> {
    check_sizes(layout, g)?;
    Ok(edge_sides(layout).iter().map(|s| cut_weight(g, s)).collect())
}

/// Tree length computed as total congestion.
pub fn tree_length(layout: &Layout, g: &Multigraph) -> Result<u64> {
    Ok(edge_congestions(layout, g)?.into_iter().sum())
}

/// Tree length computed as total dilation, one BFS per vertex.
pub fn tree_length_by_dilation(layout: &Layout, g: &Multigraph) -> Result<u64> {
    check_sizes(layout, g)?;
    let tree = layout.tree().tree();
    let mut total = 0;
    for u in 0..g.vertex_count() {
        let dist = tree.distances(layout.leaf_of(u));
        total += g
            .edges()
            .filter(|&(a, _, _)| a == u)
            .map(|(_, b, m)| m * dist[layout.leaf_of(b)] as u64)
            .sum::<u64>();
    }
    Ok(total)
}

/// Sum of distances over unordered pairs of leaves.
pub fn sigma_ll(tree: &Tree) -> u64 {
    let leaves = tree.leaves().len() as u64;
    if leaves < 2 {
        return 0;
    }
    tree.edges()
        .iter()
        .map(|&(a, b)| {
            let side = tree
                .side_nodes(a, b)
                .into_iter()
                .filter(|&x| tree.is_leaf(x))
                .count() as u64;
            side * (leaves - side)
        })
        .sum()
}

/// Sum of shortest-path distances over unordered vertex pairs. Multiplicities
/// do not affect distances.
pub fn wiener(g: &Multigraph) -> Result<u64> {
    let dist = g.all_pairs_distances();
    let mut total = 0;
    for (u, row) in dist.iter().enumerate() {
        for (v, d) in row.iter().enumerate().skip(u + 1) {
            total += d.ok_or(Error::Disconnected(u, v))?;
        }
    }
    Ok(total)
}

/// Maximum congestion (alpha) and tree length (beta) of a reassembling tree.
/// The congestion of the edge above a node is the edge-boundary degree of the
/// component made of the vertices below it.
pub fn alpha_beta(b: &RootedBinaryTree, g: &Multigraph) -> Result<(u64, u64)> {
    let cong = rooted_congestions(b, g)?;
    let alpha = cong.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let beta = cong.iter().map(|&(_, c)| c).sum();
    Ok((alpha, beta))
}

/// `(child node, congestion)` for every edge of a rooted tree.
pub fn rooted_congestions(b: &RootedBinaryTree, g: &Multigraph) -> Result<Vec<(usize, u64)>> {
    if b.leaf_count() != g.vertex_count() {
        return invalid(format!(
            "rooted tree has {} leaves but the graph has {} vertices",
            b.leaf_count(),
            g.vertex_count()
        ));
    }
    let n = g.vertex_count();
    Ok(b.edge_children()
        .into_iter()
        .map(|x| {
            let mut side = VertexSet::new(n);
            for v in b.vertices_below(x) {
                side.insert(v);
            }
            (x, cut_weight(g, &side))
        })
        .collect())
}

/// Rooted tree length computed as total dilation.
pub fn rooted_tree_length_by_dilation(b: &RootedBinaryTree, g: &Multigraph) -> Result<u64> {
    if b.leaf_count() != g.vertex_count() {
        return invalid("leaf count does not match vertex count");
    }
    Ok(g.edges()
        .map(|(u, v, m)| m * b.distance(b.leaf_of(u), b.leaf_of(v)) as u64)
        .sum())
}

/// One line of the per-edge section of a [`MeasureReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeMeasure {
    /// A graph pair and the dilation of each of its parallel edges.
    Graph {
        u: usize,
        v: usize,
        mult: u64,
        dilation: u64,
    },
    /// A tree edge and its congestion.
    Tree {
        index: usize,
        a: usize,
        b: usize,
        class: EdgeClass,
        congestion: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub n: usize,
    pub m: u64,
    pub tree_length: u64,
    pub sigma_ll: u64,
    pub max_dilation: u64,
    pub max_congestion: u64,
    pub alpha: u64,
    pub beta: u64,
    pub per_edge: Vec<EdgeMeasure>,
}

impl MeasureReport {
    /// Total dilation recomputed from the per-edge section.
    pub fn dilation_total(&self) -> u64 {
        self.per_edge
            .iter()
            .map(|e| match e {
                EdgeMeasure::Graph { mult, dilation, .. } => mult * dilation,
                EdgeMeasure::Tree { .. } => 0,
            })
            .sum()
    }

    /// Total congestion recomputed from the per-edge section.
    pub fn congestion_total(&self) -> u64 {
        self.per_edge
            .iter()
            .map(|e| match e {
                EdgeMeasure::Tree { congestion, .. } => *congestion,
                EdgeMeasure::Graph { .. } => 0,
            })
            .sum()
    }
}

/// Every measure of an unrooted layout.
pub fn measure_report(layout: &Layout, g: &Multigraph) -> Result<MeasureReport> {
    check_sizes(layout, g)?;
    let tree = layout.tree().tree();
    let congestions = edge_congestions(layout, g)?;
    let classes = layout.tree().edge_classes().classes;
    let mut per_edge = Vec::new();
    let mut max_dilation = 0;
    for (u, v, mult) in g.edges() {
        let dilation = dilation(layout, g, u, v)?;
        max_dilation = max_dilation.max(dilation);
        per_edge.push(EdgeMeasure::Graph { u, v, mult, dilation });
    }
    for (index, (&(a, b), &congestion)) in tree.edges().iter().zip(&congestions).enumerate() {
        per_edge.push(EdgeMeasure::Tree {
            index,
            a,
            b,
            class: classes[index],
            congestion,
        });
    }
    let tree_length: u64 = congestions.iter().sum();
    let max_congestion = congestions.iter().copied().max().unwrap_or(0);
    Ok(MeasureReport {
        n: g.vertex_count(),
        m: g.edge_total(),
        tree_length,
        sigma_ll: sigma_ll(tree),
        max_dilation,
        max_congestion,
        alpha: max_congestion,
        beta: tree_length,
        per_edge,
    })
}

/// Every measure of a rooted reassembling tree.
pub fn rooted_measure_report(b: &RootedBinaryTree, g: &Multigraph) -> Result<MeasureReport> {
    let cong = rooted_congestions(b, g)?;
    let mut per_edge = Vec::new();
    let mut max_dilation = 0;
    for (u, v, mult) in g.edges() {
        let dilation = b.distance(b.leaf_of(u), b.leaf_of(v)) as u64;
        max_dilation = max_dilation.max(dilation);
        per_edge.push(EdgeMeasure::Graph { u, v, mult, dilation });
    }
    for (index, &(x, congestion)) in cong.iter().enumerate() {
        let class = if b.is_leaf(x) {
            EdgeClass::External
        } else {
            EdgeClass::Internal
        };
        per_edge.push(EdgeMeasure::Tree {
            index,
            a: b.parent(x).unwrap(),
            b: x,
            class,
            congestion,
        });
    }
    let (alpha, beta) = alpha_beta(b, g)?;
    // the root is not a leaf, so count leaves by vertex placement
    let leaves: Vec<usize> = (0..b.leaf_count()).map(|v| b.leaf_of(v)).collect();
    let mut sigma = 0u64;
    for (i, &x) in leaves.iter().enumerate() {
        for &y in &leaves[i + 1..] {
            sigma += b.distance(x, y) as u64;
        }
    }
    Ok(MeasureReport {
        n: g.vertex_count(),
        m: g.edge_total(),
        tree_length: beta,
        sigma_ll: sigma,
        max_dilation,
        max_congestion: alpha,
        alpha,
        beta,
        per_edge,
    })
}
