//! Newick serialization. Leaves are labeled `vK` for graph vertex `K`;
//! internal nodes carry no label. Unrooted trees are written hung from a
//! central node.

use super::{Layout, LeafTree, RootedBinaryTree, Tree};
use crate::error::{Error, Result};

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        message: message.into(),
    }
}

/// Writes a layout rooted at its central node. With two central nodes the one
/// whose side holds the smaller vertex label is used. Children are ordered by
/// the smallest vertex label below them.
pub fn layout_to_newick(layout: &Layout) -> String {
    let tree = layout.tree().tree();
    match layout.vertex_count() {
        1 => return "v0;".to_string(),
        2 => return "(v0,v1);".to_string(),
        _ => {}
    }
    let centers = tree.central_nodes();
    let min_label = |side: Vec<usize>| {
        side.into_iter()
            .filter_map(|x| layout.vertex_at(x))
            .min()
            .unwrap_or(usize::MAX)
    };
    let root = match centers[..] {
        [c] => c,
        [a, b] => {
            if min_label(tree.side_nodes(b, a)) <= min_label(tree.side_nodes(a, b)) {
                a
            } else {
                b
            }
        }
        _ => unreachable!(),
    };
    let (parent, order) = tree.rooted_order(root);
    let mut best = vec![usize::MAX; tree.node_count()];
    for &x in order.iter().rev() {
        if let Some(v) = layout.vertex_at(x) {
            best[x] = best[x].min(v);
        }
        if let Some(p) = parent[x] {
            best[p] = best[p].min(best[x]);
        }
    }
    let mut out = String::new();
    write_node(tree, root, None, &mut out, &|x| {
        layout.vertex_at(x).map(|v| format!("v{v}"))
    }, &|x| best[x]);
    out.push(';');
    out
}

fn write_node<L, K, O>(tree: &Tree, x: usize, from: Option<usize>, out: &mut String, label: &L, key: &K)
where
    L: Fn(usize) -> Option<String>,
    K: Fn(usize) -> O,
    O: Ord,
{
    let mut kids: Vec<usize> = tree
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&y| Some(y) != from)
        .collect();
    if !kids.is_empty() {
        kids.sort_by_key(|&y| key(y));
        out.push('(');
        for (i, &y) in kids.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_node(tree, y, Some(x), out, label, key);
        }
        out.push(')');
    }
    if let Some(l) = label(x) {
        out.push_str(&l);
    }
}

/// Writes a rooted binary tree; children keep their stored order.
pub fn rooted_to_newick(b: &RootedBinaryTree) -> String {
    fn go(b: &RootedBinaryTree, x: usize, out: &mut String) {
        match b.children(x) {
            Some([l, r]) => {
                out.push('(');
                go(b, l, out);
                out.push(',');
                go(b, r, out);
                out.push(')');
            }
            None => out.push_str(&format!("v{}", b.vertex_at(x).unwrap())),
        }
    }
    let mut out = String::new();
    go(b, b.root(), &mut out);
    out.push(';');
    out
}

/// Shape-only serialization from the first central node, with children in
/// canonical order. Isomorphic trees give identical strings.
pub fn unlabeled_newick(tree: &Tree) -> String {
    let centers = tree.central_nodes();
    // pick the center whose rooted code is smallest so the output is canonical
    let root = centers
        .iter()
        .copied()
        .min_by_key(|&c| rooted_code(tree, c))
        .unwrap();
    let mut out = String::new();
    let codes = subtree_codes(tree, root);
    write_node(tree, root, None, &mut out, &|_| None, &|y| codes[y].clone());
    if out.is_empty() {
        out.push_str("()");
    }
    out.push(';');
    out
}

fn subtree_codes(tree: &Tree, root: usize) -> Vec<String> {
    let (parent, order) = tree.rooted_order(root);
    let mut kids: Vec<Vec<String>> = vec![Vec::new(); tree.node_count()];
    let mut codes = vec![String::new(); tree.node_count()];
    for &x in order.iter().rev() {
        let mut k = std::mem::take(&mut kids[x]);
        k.sort_unstable();
        codes[x] = format!("({})", k.concat());
        if let Some(p) = parent[x] {
            kids[p].push(codes[x].clone());
        }
    }
    codes
}

fn rooted_code(tree: &Tree, root: usize) -> String {
    subtree_codes(tree, root)[root].clone()
}

/// Parsed Newick string: node 0 is the root.
#[derive(Debug, Clone)]
pub struct NewickTree {
    pub tree: Tree,
    pub labels: Vec<Option<String>>,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<Option<String>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn node(&mut self) -> Result<usize> {
        let id = self.labels.len();
        self.labels.push(None);
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                let child = self.node()?;
                self.edges.push((id, child));
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(parse_err(format!("expected ',' or ')' at byte {}", self.pos))),
                }
            }
        }
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !matches!(c, b'(' | b')' | b',' | b';' | b':') && !c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
        if start < self.pos {
            let text = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| parse_err("invalid utf-8"))?;
            self.labels[id] = Some(text.to_string());
        }
        // branch lengths are accepted and ignored
        if self.peek() == Some(b':') {
            self.pos += 1;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E'))
            {
                self.pos += 1;
            }
        }
        Ok(id)
    }
}

pub fn parse_newick(text: &str) -> Result<NewickTree> {
    let mut p = Parser {
        s: text.trim().as_bytes(),
        pos: 0,
        edges: Vec::new(),
        labels: Vec::new(),
    };
    p.node()?;
    p.skip_ws();
    if p.peek() != Some(b';') {
        return Err(parse_err("missing terminating ';'"));
    }
    p.pos += 1;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(parse_err("trailing characters after ';'"));
    }
    let tree = Tree::from_edges(p.labels.len(), p.edges)?;
    Ok(NewickTree {
        tree,
        labels: p.labels,
    })
}

fn vertex_labels(parsed: &NewickTree) -> Result<Vec<Option<usize>>> {
    let leaves = parsed.tree.leaves();
    let n = leaves.len();
    let mut seen = vec![false; n];
    let mut out = vec![None; parsed.tree.node_count()];
    for x in leaves {
        let label = parsed.labels[x]
            .as_deref()
            .ok_or_else(|| parse_err("unlabeled leaf"))?;
        let k: usize = label
            .strip_prefix('v')
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| parse_err(format!("leaf label `{label}` is not of the form vK")))?;
        if k >= n || std::mem::replace(&mut seen[k], true) {
            return Err(parse_err(format!("leaf label `{label}` out of range or repeated")));
        }
        out[x] = Some(k);
    }
    Ok(out)
}

/// Reads an unrooted layout. A root with two children is suppressed.
pub fn parse_layout(text: &str, max_degree: usize) -> Result<Layout> {
    let parsed = parse_newick(text)?;
    let tree = &parsed.tree;
    let (tree, labels) = if tree.node_count() > 2 && tree.degree(0) == 2 {
        let labels = vertex_labels(&parsed)?;
        let [a, b] = [tree.neighbors(0)[0], tree.neighbors(0)[1]];
        let mut keep = vec![true; tree.node_count()];
        keep[0] = false;
        let (t, map) = tree.induced(&keep, &[(a, b)]);
        let mut new_labels = vec![None; t.node_count()];
        for (old, l) in labels.into_iter().enumerate() {
            if let Some(new) = map[old] {
                new_labels[new] = l;
            }
        }
        (t, new_labels)
    } else {
        (tree.clone(), vertex_labels(&parsed)?)
    };
    let mut phi = vec![0; labels.iter().flatten().count()];
    for (x, l) in labels.iter().enumerate() {
        if let Some(v) = l {
            phi[*v] = x;
        }
    }
    Layout::new(LeafTree::new(tree, max_degree)?, phi)
}

pub fn parse_rooted(text: &str) -> Result<RootedBinaryTree> {
    let parsed = parse_newick(text)?;
    let labels = vertex_labels(&parsed)?;
    let mut leaf_of = vec![0; labels.iter().flatten().count()];
    for (x, l) in labels.iter().enumerate() {
        if let Some(v) = l {
            leaf_of[*v] = x;
        }
    }
    RootedBinaryTree::from_tree(&parsed.tree, 0, &leaf_of)
}
