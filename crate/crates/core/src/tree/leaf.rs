use serde::Serialize;

use super::Tree;
use crate::error::{invalid, Result};

/// Tree whose internal nodes have degree between 3 and `max_internal_degree`.
/// Graph vertices live on the leaves; internal nodes are relays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafTree {
    tree: Tree,
    delta: usize,
}

/// Whether a tree edge touches a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    External,
    Internal,
}

/// Per-edge classification, indexed like [`Tree::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdgeClass {
    pub classes: Vec<EdgeClass>,
}

impl TreeEdgeClass {
    pub fn external(&self) -> Vec<usize> {
        self.indices(EdgeClass::External)
    }

    pub fn internal(&self) -> Vec<usize> {
        self.indices(EdgeClass::Internal)
    }

    fn indices(&self, class: EdgeClass) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == class)
            .map(|(i, _)| i)
            .collect()
    }
}

impl LeafTree {
    pub fn new(tree: Tree, delta: usize) -> Result<Self> {
        if delta < 3 {
            return invalid(format!("maximum internal degree must be at least 3, got {delta}"));
        }
        for v in 0..tree.node_count() {
            let d = tree.degree(v);
            if d == 2 {
                return invalid(format!("node {v} has degree 2"));
            }
            if d > delta {
                return invalid(format!("node {v} has degree {d} > {delta}"));
            }
        }
        Ok(LeafTree { tree, delta })
    }

    /// Layout tree: every internal node has degree exactly 3.
    pub fn cubic(tree: Tree) -> Result<Self> {
        Self::new(tree, 3)
    }

    pub(crate) fn from_parts_unchecked(tree: Tree, delta: usize) -> Self {
        LeafTree { tree, delta }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn into_tree(self) -> Tree {
        self.tree
    }

    pub fn max_internal_degree(&self) -> usize {
        self.delta
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.tree.leaves()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.tree.node_count())
            .filter(|&v| !self.tree.is_leaf(v))
            .collect()
    }

    /// Distance between two leaves.
    pub fn leaf_distance(&self, a: usize, b: usize) -> Result<usize> {
        for x in [a, b] {
            if x >= self.tree.node_count() || !self.tree.is_leaf(x) {
                return invalid(format!("node {x} is not a leaf"));
            }
        }
        self.tree.distance(a, b)
    }

    /// Leaves on either side of edge `edge`: first the side of the edge's
    /// first endpoint, then the other.
    pub fn edge_cut(&self, edge: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let Some((a, b)) = self.tree.edge(edge) else {
            return invalid(format!("no tree edge with index {edge}"));
        };
        let side_b: Vec<usize> = self
            .tree
            .side_nodes(a, b)
            .into_iter()
            .filter(|&v| self.tree.is_leaf(v))
            .collect();
        let side_a: Vec<usize> = self
            .leaves()
            .into_iter()
            .filter(|v| side_b.binary_search(v).is_err())
            .collect();
        Ok((side_a, side_b))
    }

    pub fn edge_classes(&self) -> TreeEdgeClass {
        let classes = self
            .tree
            .edges()
            .iter()
            .map(|&(a, b)| {
                if self.tree.is_leaf(a) || self.tree.is_leaf(b) {
                    EdgeClass::External
                } else {
                    EdgeClass::Internal
                }
            })
            .collect();
        TreeEdgeClass { classes }
    }

    /// All trees one nearest-neighbor interchange away. Only defined for
    /// layout trees; node ids and edge indices are kept, so leaves stay put.
    pub fn nni_neighbors(&self) -> Vec<LeafTree> {
        if self.delta != 3 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for e in 0..self.tree.edge_count() {
            for swap in 0..2 {
                if let Some(t) = self.nni(e, swap) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Interchange across internal edge `edge`: the larger-id subtree hanging
    /// off the first endpoint trades places with subtree `swap` (0 or 1) of the
    /// second endpoint. Returns `None` for external edges.
    pub fn nni(&self, edge: usize, swap: usize) -> Option<LeafTree> {
        let (u, v) = self.tree.edge(edge)?;
        if self.tree.degree(u) != 3 || self.tree.degree(v) != 3 || swap > 1 {
            return None;
        }
        let (_, a1) = other_two(&self.tree, u, v);
        let (b0, b1) = other_two(&self.tree, v, u);
        let b = if swap == 0 { b0 } else { b1 };
        let mut edges = self.tree.edges().to_vec();
        let ia = self.tree.edge_index(u, a1)?;
        let ib = self.tree.edge_index(v, b)?;
        edges[ia] = (u, b);
        edges[ib] = (v, a1);
        let tree = Tree::from_edges_unchecked(self.tree.node_count(), edges);
        Some(LeafTree::from_parts_unchecked(tree, 3))
    }

    /// Replaces edge `edge` by a path through a new node `w` and hangs
    /// `subtree` from `w` by its node `attach`. Subtree node `i` becomes node
    /// `self.node_count() + 1 + i`; `w` is `self.node_count()`.
    pub fn subdivide_edge(&self, edge: usize, subtree: &Tree, attach: usize) -> Result<LeafTree> {
        let Some((a, b)) = self.tree.edge(edge) else {
            return invalid(format!("no tree edge with index {edge}"));
        };
        if attach >= subtree.node_count() {
            return invalid(format!("attach node {attach} not in subtree"));
        }
        let attach_degree = subtree.degree(attach) + 1;
        if attach_degree != 1 && !(3..=self.delta).contains(&attach_degree) {
            return invalid(format!(
                "attaching at a node of degree {} leaves it with degree {attach_degree}",
                subtree.degree(attach)
            ));
        }
        let w = self.tree.node_count();
        let offset = w + 1;
        let mut edges = self.tree.edges().to_vec();
        edges[edge] = (a, w);
        edges.push((w, b));
        edges.push((w, offset + attach));
        edges.extend(subtree.edges().iter().map(|&(x, y)| (x + offset, y + offset)));
        let tree = Tree::from_edges(offset + subtree.node_count(), edges)?;
        LeafTree::new(tree, self.delta)
    }

    /// Inverse of [`LeafTree::subdivide_edge`]: removes everything on the
    /// `branch` side of edge `{w, branch}` and suppresses the then degree-2
    /// node `w`. Remaining nodes keep their relative order.
    pub fn prune_subtree(&self, w: usize, branch: usize) -> Result<LeafTree> {
        if self.tree.edge_index(w, branch).is_none() {
            return invalid(format!("{{{w},{branch}}} is not a tree edge"));
        }
        if self.tree.degree(w) != 3 {
            return invalid(format!("node {w} must have degree 3 to be suppressed"));
        }
        let mut keep = vec![true; self.tree.node_count()];
        for x in self.tree.side_nodes(w, branch) {
            keep[x] = false;
        }
        keep[w] = false;
        let rest: Vec<usize> = self
            .tree
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&x| x != branch)
            .collect();
        let (tree, _) = self.tree.induced(&keep, &[(rest[0], rest[1])]);
        LeafTree::new(tree, self.delta)
    }

    /// Merges the endpoints of internal edge `edge` into one node.
    pub fn contract_edge(&self, edge: usize) -> Result<LeafTree> {
        let Some((u, v)) = self.tree.edge(edge) else {
            return invalid(format!("no tree edge with index {edge}"));
        };
        if self.tree.is_leaf(u) || self.tree.is_leaf(v) {
            return invalid("only internal edges can be contracted");
        }
        let new_degree = self.tree.degree(u) + self.tree.degree(v) - 2;
        let rewired: Vec<(usize, usize)> = self
            .tree
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != edge)
            .map(|(_, &(a, b))| (if a == v { u } else { a }, if b == v { u } else { b }))
            .collect();
        let mut keep = vec![true; self.tree.node_count()];
        keep[v] = false;
        let (tree, _) = Tree::from_edges_unchecked(self.tree.node_count(), rewired).induced(&keep, &[]);
        LeafTree::new(tree, self.delta.max(new_degree))
    }

    /// Same tree with a different degree bound.
    pub fn with_max_degree(&self, delta: usize) -> Result<LeafTree> {
        LeafTree::new(self.tree.clone(), delta)
    }
}

pub(crate) fn other_two(tree: &Tree, x: usize, exclude: usize) -> (usize, usize) {
    let mut others: Vec<usize> = tree
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&y| y != exclude)
        .collect();
    others.sort_unstable();
    (others[0], others[1])
}

/// A leaf tree together with a bijection from graph vertices to its leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    tree: LeafTree,
    phi: Vec<usize>,
    vertex_at: Vec<Option<usize>>,
}

impl Layout {
    /// `phi[v]` is the leaf hosting vertex `v`.
    pub fn new(tree: LeafTree, phi: Vec<usize>) -> Result<Self> {
        let leaves = tree.leaves();
        if phi.len() != leaves.len() {
            return invalid(format!(
                "mapping has {} vertices but the tree has {} leaves",
                phi.len(),
                leaves.len()
            ));
        }
        let mut vertex_at = vec![None; tree.tree().node_count()];
        for (v, &leaf) in phi.iter().enumerate() {
            if leaf >= vertex_at.len() || !tree.tree().is_leaf(leaf) {
                return invalid(format!("vertex {v} mapped to non-leaf node {leaf}"));
            }
            if vertex_at[leaf].replace(v).is_some() {
                return invalid(format!("leaf {leaf} hosts two vertices"));
            }
        }
        Ok(Layout {
            tree,
            phi,
            vertex_at,
        })
    }

    /// Layout where vertex `i` sits on the `i`-th smallest leaf id.
    pub fn identity(tree: LeafTree) -> Result<Self> {
        let phi = tree.leaves();
        Layout::new(tree, phi)
    }

    pub fn tree(&self) -> &LeafTree {
        &self.tree
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn leaf_of(&self, v: usize) -> usize {
        self.phi[v]
    }

    pub fn vertex_at(&self, node: usize) -> Option<usize> {
        self.vertex_at.get(node).copied().flatten()
    }

    pub fn vertex_count(&self) -> usize {
        self.phi.len()
    }

    /// Same tree with vertices `a` and `b` exchanged.
    pub fn swap_vertices(&self, a: usize, b: usize) -> Layout {
        let mut phi = self.phi.clone();
        phi.swap(a, b);
        let mut vertex_at = self.vertex_at.clone();
        vertex_at[phi[a]] = Some(a);
        vertex_at[phi[b]] = Some(b);
        Layout {
            tree: self.tree.clone(),
            phi,
            vertex_at,
        }
    }

    /// Same mapping on a tree with identical leaf ids.
    pub fn with_tree(&self, tree: LeafTree) -> Result<Layout> {
        Layout::new(tree, self.phi.clone())
    }

    /// Vertex sets on either side of tree edge `edge`.
    pub fn vertex_cut(&self, edge: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let (a, b) = self.tree.edge_cut(edge)?;
        let map = |side: Vec<usize>| {
            let mut s: Vec<usize> = side.into_iter().filter_map(|x| self.vertex_at(x)).collect();
            s.sort_unstable();
            s
        };
        Ok((map(a), map(b)))
    }
}
