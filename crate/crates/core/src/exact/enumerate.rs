//! Leaf-insertion generator.
//!
//! Leaf `k` is added to a tree on leaves `0..k` either by subdividing an edge
//! (new degree-3 node) or, when degrees above 3 are allowed, by attaching it
//! to an internal node of degree below the cap. Removing the largest leaf
//! inverts exactly one of these moves, so every labeled tree appears once.
//!
//! Trees are reported as split masks: for each edge, the leaves on the side
//! not containing leaf 0.

use crate::error::{invalid, Result};
use crate::tree::{Layout, LeafTree, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Choice {
    Edge(usize),
    Node(usize),
}

enum Undo {
    Edge { index: usize, old: (usize, usize) },
    Node { node: usize },
}

pub(crate) struct Generator {
    leaves: usize,
    delta: usize,
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
    next_internal: usize,
    placed: usize,
    // scratch for split computation
    adj: Vec<Vec<usize>>,
    mask: Vec<u64>,
}

impl Generator {
    pub(crate) fn new(leaves: usize, delta: usize) -> Self {
        assert!((3..=64).contains(&leaves));
        let nodes = 2 * leaves;
        let centre = leaves;
        let mut degree = vec![0; nodes];
        degree[centre] = 3;
        degree[..3].fill(1);
        Generator {
            leaves,
            delta,
            edges: vec![(0, centre), (1, centre), (2, centre)],
            degree,
            next_internal: leaves + 1,
            placed: 3,
            adj: vec![Vec::new(); nodes],
            mask: vec![0; nodes],
        }
    }

    pub(crate) fn complete(&self) -> bool {
        self.placed == self.leaves
    }

    pub(crate) fn choices(&self) -> Vec<Choice> {
        let mut out: Vec<Choice> = (0..self.edges.len()).map(Choice::Edge).collect();
        out.extend(
            (self.leaves..self.next_internal)
                .filter(|&x| self.degree[x] < self.delta)
                .map(Choice::Node),
        );
        out
    }

    fn apply(&mut self, choice: Choice) -> Undo {
        let k = self.placed;
        self.placed += 1;
        self.degree[k] = 1;
        match choice {
            Choice::Edge(index) => {
                let (a, b) = self.edges[index];
                let w = self.next_internal;
                self.next_internal += 1;
                self.degree[w] = 3;
                self.edges[index] = (a, w);
                self.edges.push((w, b));
                self.edges.push((w, k));
                Undo::Edge { index, old: (a, b) }
            }
            Choice::Node(x) => {
                self.degree[x] += 1;
                self.edges.push((x, k));
                Undo::Node { node: x }
            }
        }
    }

    fn undo(&mut self, undo: Undo) {
        self.placed -= 1;
        self.degree[self.placed] = 0;
        match undo {
            Undo::Edge { index, old } => {
                self.edges.pop();
                self.edges.pop();
                self.next_internal -= 1;
                self.degree[self.next_internal] = 0;
                self.edges[index] = old;
            }
            Undo::Node { node } => {
                self.edges.pop();
                self.degree[node] -= 1;
            }
        }
    }

    /// Replays a prefix of choices; fails if one is out of range.
    pub(crate) fn replay(&mut self, prefix: &[usize]) -> bool {
        for &i in prefix {
            let choices = self.choices();
            match choices.get(i) {
                Some(&c) => {
                    self.apply(c);
                }
                None => return false,
            }
        }
        true
    }

    /// Visits every completion of the current partial tree in a fixed order.
    pub(crate) fn for_each(&mut self, visit: &mut dyn FnMut(&[u64])) {
        if self.complete() {
            let splits = self.splits();
            visit(&splits);
            return;
        }
        for c in self.choices() {
            let u = self.apply(c);
            self.for_each(visit);
            self.undo(u);
        }
    }

    /// Split masks of the current tree, one per edge.
    pub(crate) fn splits(&mut self) -> Vec<u64> {
        let nodes = self.next_internal;
        for list in &mut self.adj[..nodes] {
            list.clear();
        }
        for &(a, b) in &self.edges {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
        // iterative post-order from leaf 0
        let mut order = Vec::with_capacity(nodes);
        let mut parent = vec![usize::MAX; nodes];
        let mut stack = vec![0usize];
        parent[0] = 0;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut out = Vec::with_capacity(self.edges.len());
        for &x in order.iter().rev() {
            let own = if x < self.leaves { 1u64 << x } else { 0 };
            let m = own | self.adj[x].iter().filter(|&&y| parent[y] == x && y != 0).map(|&y| self.mask[y]).fold(0, |a, b| a | b);
            self.mask[x] = m;
            if x != 0 {
                out.push(m);
            }
        }
        out
    }
}

/// Choice prefixes splitting the search into at least `want` independent
/// parts (fewer when the tree is too small), in enumeration order.
pub(crate) fn shard_prefixes(leaves: usize, delta: usize, want: usize) -> Vec<Vec<usize>> {
    let mut prefixes = vec![Vec::new()];
    let mut depth = 0;
    while prefixes.len() < want && 3 + depth < leaves {
        let mut next = Vec::new();
        for p in &prefixes {
            let mut g = Generator::new(leaves, delta);
            g.replay(p);
            for i in 0..g.choices().len() {
                let mut q = p.clone();
                q.push(i);
                next.push(q);
            }
        }
        prefixes = next;
        depth += 1;
    }
    prefixes
}

/// Rebuilds a tree from its split masks. Leaves are nodes `0..leaves` and
/// internal nodes follow; the returned layout maps vertex `v` to node `v`.
pub(crate) fn layout_from_splits(leaves: usize, splits: &[u64], delta: usize) -> Result<Layout> {
    let full = if leaves == 64 { !1u64 } else { ((1u64 << leaves) - 1) & !1 };
    let mut clusters: Vec<u64> = splits.to_vec();
    clusters.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
    clusters.dedup();
    if clusters.first() != Some(&full) {
        return invalid("split set lacks the edge at leaf 0");
    }
    let mut node_of = Vec::with_capacity(clusters.len());
    let mut next = leaves;
    for &c in &clusters {
        if c.count_ones() == 1 {
            node_of.push(c.trailing_zeros() as usize);
        } else {
            node_of.push(next);
            next += 1;
        }
    }
    let mut edges = vec![(0, node_of[0])];
    for i in 1..clusters.len() {
        let c = clusters[i];
        // smallest strictly larger cluster containing c; clusters are sorted
        // by decreasing size so scan backwards
        let parent = (0..i)
            .rev()
            .find(|&j| clusters[j] & c == c && clusters[j] != c)
            .ok_or_else(|| crate::error::Error::InvalidArgument("splits are not compatible".into()))?;
        edges.push((node_of[parent], node_of[i]));
    }
    let tree = Tree::from_edges(next, edges)?;
    Layout::new(LeafTree::new(tree, delta.max(3))?, (0..leaves).collect())
}
