use super::{Layout, LeafTree, Tree};
use crate::error::{invalid, Result};

/// Rooted binary tree with graph vertices on its leaves. Internal nodes have
/// exactly two children; the root corresponds to the fully reassembled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBinaryTree {
    children: Vec<Option<[usize; 2]>>,
    parent: Vec<Option<usize>>,
    root: usize,
    leaf_of: Vec<usize>,
    vertex_at: Vec<Option<usize>>,
}

impl RootedBinaryTree {
    /// `children[x]` lists the two children of internal node `x`, `None` for
    /// leaves; `leaf_of[v]` is the leaf hosting vertex `v`.
    pub fn new(children: Vec<Option<[usize; 2]>>, root: usize, leaf_of: Vec<usize>) -> Result<Self> {
        let nodes = children.len();
        if root >= nodes {
            return invalid("root out of range");
        }
        let mut parent = vec![None; nodes];
        for (x, c) in children.iter().enumerate() {
            if let Some(pair) = c {
                for &y in pair {
                    if y >= nodes || y == root || parent[y].replace(x).is_some() {
                        return invalid(format!("node {y} has an invalid parent structure"));
                    }
                }
            }
        }
        // every non-root node reaches the root
        let mut reached = 1;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            if let Some(pair) = children[x] {
                reached += 2;
                stack.extend(pair);
            }
        }
        if reached != nodes {
            return invalid("rooted tree is not connected");
        }
        let mut vertex_at = vec![None; nodes];
        for (v, &leaf) in leaf_of.iter().enumerate() {
            if leaf >= nodes || children[leaf].is_some() || vertex_at[leaf].replace(v).is_some() {
                return invalid(format!("vertex {v} is not mapped to a distinct leaf"));
            }
        }
        let leaves = children.iter().filter(|c| c.is_none()).count();
        if leaves != leaf_of.len() {
            return invalid(format!(
                "{} vertices for {leaves} leaves",
                leaf_of.len()
            ));
        }
        Ok(RootedBinaryTree {
            children,
            parent,
            root,
            leaf_of,
            vertex_at,
        })
    }

    /// Orients `tree` away from `root`. The root must have degree 2 and every
    /// other internal node degree 3. `leaf_of[v]` names nodes of `tree`.
    pub fn from_tree(tree: &Tree, root: usize, leaf_of: &[usize]) -> Result<Self> {
        if tree.node_count() == 1 {
            return RootedBinaryTree::new(vec![None], 0, leaf_of.to_vec());
        }
        if tree.degree(root) != 2 {
            return invalid(format!("root {root} must have degree 2"));
        }
        let (parent, order) = tree.rooted_order(root);
        let mut children = vec![None; tree.node_count()];
        for &x in &order {
            let mut kids: Vec<usize> = tree
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&y| parent[x] != Some(y))
                .collect();
            kids.sort_unstable();
            match kids[..] {
                [] => {}
                [a, b] => children[x] = Some([a, b]),
                _ => return invalid(format!("node {x} does not have two children")),
            }
        }
        RootedBinaryTree::new(children, root, leaf_of.to_vec())
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn children(&self, x: usize) -> Option<[usize; 2]> {
        self.children[x]
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.children[x].is_none()
    }

    pub fn leaf_of(&self, v: usize) -> usize {
        self.leaf_of[v]
    }

    pub fn vertex_at(&self, x: usize) -> Option<usize> {
        self.vertex_at[x]
    }

    /// Non-root nodes; each stands for the edge to its parent.
    pub fn edge_children(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&x| x != self.root).collect()
    }

    /// Vertices on the leaves below `x`, ascending.
    pub fn vertices_below(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.children[y] {
                Some(pair) => stack.extend(pair),
                None => out.extend(self.vertex_at[y]),
            }
        }
        out.sort_unstable();
        out
    }

    fn depth(&self, mut x: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[x] {
            x = p;
            d += 1;
        }
        d
    }

    /// Path length between two nodes.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        let (mut x, mut y) = (a, b);
        let (mut dx, mut dy) = (self.depth(x), self.depth(y));
        let mut steps = 0;
        while dx > dy {
            x = self.parent[x].unwrap();
            dx -= 1;
            steps += 1;
        }
        while dy > dx {
            y = self.parent[y].unwrap();
            dy -= 1;
            steps += 1;
        }
        while x != y {
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
            steps += 2;
        }
        steps
    }

    /// Internal nodes in left-to-right postorder: the order in which
    /// components are merged when reassembling the graph.
    pub fn reassembling_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            match self.children[x] {
                None => {}
                Some(_) if expanded => out.push(x),
                Some([l, r]) => {
                    stack.push((x, true));
                    stack.push((r, false));
                    stack.push((l, false));
                }
            }
        }
        out
    }

    /// Undirected view of the tree (root kept as a degree-2 node).
    pub fn as_tree(&self) -> Tree {
        let edges = self
            .edge_children()
            .into_iter()
            .map(|x| (self.parent[x].unwrap(), x))
            .collect();
        Tree::from_edges_unchecked(self.node_count(), edges)
    }
}

/// Suppresses the root, joining its two children, which yields a layout tree
/// with the same leaves.
pub fn rooted_to_unrooted(b: &RootedBinaryTree) -> Result<Layout> {
    let Some([l, r]) = b.children(b.root()) else {
        return invalid("root suppression needs at least two leaves");
    };
    let tree = b.as_tree();
    let mut keep = vec![true; tree.node_count()];
    keep[b.root()] = false;
    let (unrooted, map) = tree.induced(&keep, &[(l, r)]);
    let phi = (0..b.leaf_count())
        .map(|v| map[b.leaf_of(v)].expect("leaves are kept"))
        .collect();
    Layout::new(LeafTree::cubic(unrooted)?, phi)
}
