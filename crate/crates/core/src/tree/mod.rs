//! Host trees: plain unrooted trees, leaf trees with degree bounds, layouts,
//! and rooted binary reassembling trees.

mod iso;
mod leaf;
pub mod newick;
mod rooted;

use std::collections::VecDeque;

use crate::error::{invalid, Result};

pub use iso::{canonical_form, labeled_splits, tree_isomorphic, unlabeled_isomorphic};
pub use leaf::{EdgeClass, Layout, LeafTree, TreeEdgeClass};
pub(crate) use leaf::other_two;
pub use rooted::{rooted_to_unrooted, RootedBinaryTree};

/// A finite unrooted tree on nodes `0..len`. Edges keep their insertion
/// order, which gives every edge a stable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Single-node tree.
    pub fn singleton() -> Self {
        Tree {
            adj: vec![Vec::new()],
            edges: Vec::new(),
        }
    }

    /// Builds a tree, checking that the edges form a spanning tree of `0..node_count`.
    pub fn from_edges(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return invalid("a tree needs at least one node");
        }
        if edges.len() + 1 != node_count {
            return invalid(format!(
                "{} edges cannot span {} nodes as a tree",
                edges.len(),
                node_count
            ));
        }
        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            if u >= node_count || v >= node_count || u == v {
                return invalid(format!("bad tree edge {{{u},{v}}}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let t = Tree { adj, edges };
        if t.distances_from(0).iter().any(|d| d.is_none()) {
            return invalid("tree edges are not connected");
        }
        Ok(t)
    }

    pub(crate) fn from_edges_unchecked(node_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Tree { adj, edges }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Option<(usize, usize)> {
        self.edges.get(index).copied()
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Nodes of degree at most one, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&v| self.degree(v) <= 1).collect()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) <= 1
    }

    pub(crate) fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// BFS distances from `src` to every node.
    pub fn distances(&self, src: usize) -> Vec<usize> {
        self.distances_from(src)
            .into_iter()
            .map(|d| d.expect("tree is connected"))
            .collect()
    }

    /// Number of edges on the path between `a` and `b`.
    pub fn distance(&self, a: usize, b: usize) -> Result<usize> {
        if a >= self.node_count() || b >= self.node_count() {
            return invalid(format!("unknown node in pair ({a}, {b})"));
        }
        Ok(self.distances(a)[b])
    }

    /// Parent pointers and a preorder for the tree hung from `root`.
    pub(crate) fn rooted_order(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.node_count()];
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![root];
        let mut seen = vec![false; self.node_count()];
        seen[root] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in self.adj[x].iter().rev() {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    stack.push(y);
                }
            }
        }
        (parent, order)
    }

    /// Nodes on the `b` side after deleting edge `{a, b}`.
    pub(crate) fn side_nodes(&self, a: usize, b: usize) -> Vec<usize> {
        let mut out = vec![b];
        let mut stack = vec![(b, a)];
        while let Some((x, from)) = stack.pop() {
            for &y in &self.adj[x] {
                if y != from {
                    out.push(y);
                    stack.push((y, x));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Nodes whose removal leaves components of at most half the nodes each.
    /// Every tree has one or two; two central nodes are adjacent.
    pub fn central_nodes(&self) -> Vec<usize> {
        let n = self.node_count();
        if n == 1 {
            return vec![0];
        }
        let (parent, order) = self.rooted_order(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        (0..n)
            .filter(|&v| {
                let mut biggest = n - size[v];
                for &c in &self.adj[v] {
                    if parent[c] == Some(v) {
                        biggest = biggest.max(size[c]);
                    }
                }
                2 * biggest <= n
            })
            .collect()
    }

    /// Sizes of the components left after deleting node `v`.
    pub fn component_sizes_without(&self, v: usize) -> Vec<usize> {
        self.adj[v]
            .iter()
            .map(|&c| self.side_nodes(v, c).len())
            .collect()
    }

    /// Sum of pairwise distances over all nodes (Wiener index of the tree).
    pub fn wiener(&self) -> u64 {
        let n = self.node_count() as u64;
        // each edge contributes (side size) * (other side size)
        self.edges
            .iter()
            .map(|&(a, b)| {
                let s = self.side_nodes(a, b).len() as u64;
                s * (n - s)
            })
            .sum()
    }

    /// Rebuilds with nodes outside `keep` removed and ids compacted in order.
    /// Returns the new tree and the old-to-new id map.
    pub(crate) fn induced(&self, keep: &[bool], extra_edges: &[(usize, usize)]) -> (Tree, Vec<Option<usize>>) {
        let mut map = vec![None; self.node_count()];
        let mut next = 0;
        for v in 0..self.node_count() {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .chain(extra_edges)
            .filter_map(|&(a, b)| Some((map[a]?, map[b]?)))
            .collect();
        (Tree::from_edges_unchecked(next, edges), map)
    }
}
