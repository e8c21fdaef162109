//! Isomorphism via canonical encodings.
//!
//! Unlabeled trees are encoded AHU-style from their central node(s): each
//! node becomes `(` + sorted child codes + `)`. Leaf-labeled trees without
//! degree-2 nodes are determined by their set of splits, so labeled
//! comparison reduces to comparing sorted split lists.

use super::{Layout, Tree};

fn encode(tree: &Tree, root: usize, skip: Option<usize>) -> String {
    // iterative post-order so large trees don't recurse deeply
    let n = tree.node_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in tree.neighbors(x) {
            if parent[y] == usize::MAX && Some(y) != skip {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut codes: Vec<Option<String>> = vec![None; n];
    let mut kids: Vec<Vec<String>> = vec![Vec::new(); n];
    for &x in order.iter().rev() {
        let mut children = std::mem::take(&mut kids[x]);
        children.sort_unstable();
        let mut code = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        code.push('(');
        for c in children {
            code.push_str(&c);
        }
        code.push(')');
        if x == root {
            codes[x] = Some(code);
        } else {
            kids[parent[x]].push(code);
        }
    }
    codes[root].take().unwrap_or_default()
}

/// Canonical string of an unrooted, unlabeled tree. Two trees are isomorphic
/// iff their canonical strings are equal.
pub fn canonical_form(tree: &Tree) -> String {
    let centers = tree.central_nodes();
    match centers[..] {
        [c] => encode(tree, c, None),
        [a, b] => {
            let mut halves = [encode(tree, a, Some(b)), encode(tree, b, Some(a))];
            halves.sort_unstable();
            format!("[{}{}]", halves[0], halves[1])
        }
        _ => unreachable!("a tree has one or two central nodes"),
    }
}

pub fn unlabeled_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.node_count() == b.node_count() && canonical_form(a) == canonical_form(b)
}

/// Vertex bipartitions induced by the tree edges, each stored as the side
/// not containing vertex 0, as sorted vertex lists.
pub fn labeled_splits(layout: &Layout) -> Vec<Vec<usize>> {
    let tree = layout.tree();
    let mut splits: Vec<Vec<usize>> = (0..tree.tree().edge_count())
        .map(|e| {
            let (a, b) = layout.vertex_cut(e).expect("edge index in range");
            if a.contains(&0) {
                b
            } else {
                a
            }
        })
        .collect();
    splits.sort_unstable();
    splits
}

/// Isomorphism of two layouts. With `labeled`, the isomorphism must also
/// carry each vertex's leaf to the same vertex's leaf.
pub fn tree_isomorphic(a: &Layout, b: &Layout, labeled: bool) -> bool {
    if labeled {
        a.vertex_count() == b.vertex_count() && labeled_splits(a) == labeled_splits(b)
    } else {
        unlabeled_isomorphic(a.tree().tree(), b.tree().tree())
    }
}
