//! The level-filled tree family that minimizes leaf distance sums.
//!
//! A member is drawn on horizontal lines: one origin on line 0 with up to
//! `R` children, every later node with up to `Δ − 1` children, all lines
//! full except the last, which is filled left to right.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::tree::{unlabeled_isomorphic, Tree};

/// Root budget `r`, maximum degree `delta` and node count `n` of a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub r: usize,
    pub delta: usize,
    pub n: usize,
}

impl FamilyParams {
    pub fn new(r: usize, delta: usize, n: usize) -> Result<Self> {
        let p = FamilyParams { r, delta, n };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.delta < 3 {
            return invalid(format!("delta must be at least 3, got {}", self.delta));
        }
        if self.r != self.delta && self.r + 1 != self.delta {
            return invalid(format!(
                "root budget must be delta or delta - 1, got r = {} for delta = {}",
                self.r, self.delta
            ));
        }
        if self.n == 0 {
            return invalid("a family member needs at least one node");
        }
        Ok(())
    }

    fn with_nodes(self, n: usize) -> Self {
        FamilyParams { n, ..self }
    }
}

/// Node count of a member whose lines 0..=k are all full.
pub fn capacity(k: u32, r: usize, delta: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    let branching = delta as u64 - 1;
    let mut total = 1u64;
    let mut level = r as u64;
    for _ in 0..k {
        total += level;
        level *= branching;
    }
    total
}

/// Line index of every node, measured from an origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineEmbedding {
    pub origin: usize,
    pub level: Vec<usize>,
    parent: Vec<Option<usize>>,
}

impl LineEmbedding {
    pub fn height(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Nodes on line `i`, ascending.
    pub fn line(&self, i: usize) -> Vec<usize> {
        (0..self.level.len()).filter(|&v| self.level[v] == i).collect()
    }

    /// Children of `u`: its neighbors one line further from the origin.
    pub fn children(&self, u: usize) -> Vec<usize> {
        (0..self.level.len())
            .filter(|&w| self.parent[w] == Some(u))
            .collect()
    }

    /// Nodes `w` whose shortest path to the origin runs through `u`.
    pub fn subtree(&self, u: usize) -> Vec<usize> {
        (0..self.level.len())
            .filter(|&w| {
                let mut x = w;
                loop {
                    if x == u {
                        return true;
                    }
                    match self.parent[x] {
                        Some(p) => x = p,
                        None => return false,
                    }
                }
            })
            .collect()
    }
}

/// Places every node on the line given by its distance from `origin`.
pub fn line_embedding(tree: &Tree, origin: usize) -> Result<LineEmbedding> {
    if origin >= tree.node_count() {
        return invalid(format!("origin {origin} is not a node"));
    }
    let (parent, _) = tree.rooted_order(origin);
    Ok(LineEmbedding {
        origin,
        level: tree.distances(origin),
        parent,
    })
}

/// The member of the family with `params.n` nodes. Node 0 is the origin and
/// nodes are numbered line by line, left to right.
pub fn build_family_member(params: FamilyParams) -> Result<(Tree, LineEmbedding)> {
    params.validate()?;
    let n = params.n;
    let mut edges = Vec::with_capacity(n - 1);
    let mut current = vec![0usize];
    let mut next_id = 1;
    let mut depth = 0;
    while next_id < n {
        let per_parent = if depth == 0 { params.r } else { params.delta - 1 };
        let mut line = Vec::new();
        for &p in &current {
            for _ in 0..per_parent {
                if next_id == n {
                    break;
                }
                edges.push((p, next_id));
                line.push(next_id);
                next_id += 1;
            }
        }
        current = line;
        depth += 1;
    }
    let tree = Tree::from_edges(n, edges)?;
    let embedding = line_embedding(&tree, 0)?;
    Ok((tree, embedding))
}

/// Whether `tree` is isomorphic to the member with as many nodes.
pub fn is_family_member(tree: &Tree, r: usize, delta: usize) -> Result<bool> {
    let params = FamilyParams::new(r, delta, tree.node_count())?;
    let (member, _) = build_family_member(params.with_nodes(tree.node_count()))?;
    Ok(unlabeled_isomorphic(tree, &member))
}

/// Every non-isomorphic tree obtained by hanging `extra` new nodes as
/// children of the last-line nodes of the full member of height `k`, each
/// of those nodes taking at most `delta - 1` (or `r` when `k == 0`).
pub fn level_completions(r: usize, delta: usize, k: u32, extra: usize) -> Result<Vec<Tree>> {
    let full = capacity(k, r, delta) as usize;
    let (base, emb) = build_family_member(FamilyParams::new(r, delta, full)?)?;
    let last = emb.line(k as usize);
    let cap = if k == 0 { r } else { delta - 1 };
    if extra > cap * last.len() {
        return invalid("too many extra nodes for the last line");
    }
    let mut out: Vec<Tree> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut counts = vec![0usize; last.len()];
    // last-line nodes are not all symmetric, so every composition is tried
    fn rec(
        i: usize,
        left: usize,
        cap: usize,
        counts: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if i == counts.len() {
            if left == 0 {
                visit(counts);
            }
            return;
        }
        for c in 0..=cap.min(left) {
            counts[i] = c;
            rec(i + 1, left - c, cap, counts, visit);
        }
        counts[i] = 0;
    }
    rec(0, extra, cap, &mut counts, &mut |counts| {
        let mut edges = base.edges().to_vec();
        let mut id = base.node_count();
        for (&p, &c) in last.iter().zip(counts) {
            for _ in 0..c {
                edges.push((p, id));
                id += 1;
            }
        }
        let t = Tree::from_edges_unchecked(id, edges);
        if seen.insert(crate::tree::canonical_form(&t)) {
            out.push(t);
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::sigma_ll;

    fn member(r: usize, delta: usize, n: usize) -> (Tree, LineEmbedding) {
        build_family_member(FamilyParams::new(r, delta, n).unwrap()).unwrap()
    }

    #[test]
    fn capacity_examples() {
        assert_eq!(capacity(0, 3, 3), 1);
        assert_eq!(capacity(1, 3, 3), 4);
        assert_eq!(capacity(2, 3, 3), 10);
        assert_eq!(capacity(2, 2, 3), 7);
    }

    #[test]
    fn params_validation() {
        assert!(FamilyParams::new(3, 3, 5).is_ok());
        assert!(FamilyParams::new(2, 3, 5).is_ok());
        assert!(FamilyParams::new(1, 3, 5).is_err());
        assert!(FamilyParams::new(2, 2, 5).is_err());
        assert!(FamilyParams::new(3, 3, 0).is_err());
    }

    #[test]
    fn star_member() {
        let (t, emb) = member(3, 3, 4);
        assert_eq!(t.degree(0), 3);
        assert_eq!(emb.line(1), vec![1, 2, 3]);
        let (single, _) = member(3, 3, 1);
        assert_eq!(single.node_count(), 1);
    }

    #[test]
    fn six_node_member() {
        // M_1 = 4 <= 6 < M_2 = 10; remainder 2 = 1·2 + 0
        let (t, emb) = member(3, 3, 6);
        assert_eq!(emb.children(1), vec![4, 5]);
        assert!(emb.children(2).is_empty());
        assert_eq!(t.leaves().len(), 4);
    }

    #[test]
    fn eight_leaf_member_is_balanced_layout_tree() {
        let (t, _) = member(3, 3, 14);
        assert_eq!(t.leaves().len(), 8);
        assert!(t.leaves().len() * 2 - 2 == t.node_count());
        assert!((0..14).all(|v| t.degree(v) == 1 || t.degree(v) == 3));
        assert_eq!(t.central_nodes().len(), 2);
        // seen from the central edge every leaf is 3 lines away
        let [a, b] = t.central_nodes()[..] else { panic!() };
        let da = t.distances(a);
        let db = t.distances(b);
        assert!(t.leaves().iter().all(|&x| da[x].min(db[x]) == 2));
        assert_eq!(sigma_ll(&t), 120);
    }

    #[test]
    fn central_node_counts() {
        let (t15, _) = member(3, 3, 15);
        assert_eq!(t15.central_nodes(), vec![0]);
        let (t14, _) = member(3, 3, 14);
        assert_eq!(t14.central_nodes(), vec![0, 1]);
    }

    #[test]
    fn line_embedding_of_quartet() {
        let q = Tree::from_edges(6, vec![(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)]).unwrap();
        let emb = line_embedding(&q, 4).unwrap();
        let mut levels = emb.level.clone();
        levels.sort();
        assert_eq!(levels, vec![0, 1, 1, 1, 2, 2]);
        assert_eq!(emb.subtree(5), vec![2, 3, 5]);
        let total: usize = emb.level.iter().sum();
        assert_eq!(total, q.distances(4).iter().sum::<usize>());
        assert!(line_embedding(&q, 6).is_err());
    }

    #[test]
    fn membership() {
        let (t, _) = member(3, 3, 14);
        assert!(is_family_member(&t, 3, 3).unwrap());
        let star = Tree::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_family_member(&star, 3, 3).unwrap());
        // 8-leaf caterpillar
        let mut edges = vec![(0, 8), (1, 8)];
        for i in 8..13 {
            edges.push((i, i + 1));
        }
        for (leaf, spine) in (2..7).zip(9..14) {
            if spine < 13 {
                edges.push((leaf, spine));
            }
        }
        edges.push((6, 13));
        edges.push((7, 13));
        let cat = Tree::from_edges(14, edges).unwrap();
        assert!(!is_family_member(&cat, 3, 3).unwrap());
        assert!(is_family_member(&cat, 1, 3).is_err());
    }

    #[test]
    fn member_shape_invariants() {
        for (r, delta) in [(3, 3), (2, 3), (4, 4), (3, 4), (5, 5)] {
            for n in 1..60 {
                let (t, emb) = member(r, delta, n);
                assert_eq!(t.node_count(), n);
                assert!(t.max_degree() <= delta);
                assert!(t.degree(0) <= r);
                let h = emb.height();
                if h == 0 {
                    continue;
                }
                // only the last line may be incomplete, and at most one node on
                // the line above it is partially filled
                let cap = |d: usize| if d == 0 { r } else { delta - 1 };
                for d in 0..h - 1 {
                    assert!(emb.line(d).iter().all(|&v| emb.children(v).len() == cap(d)));
                }
                let partial = emb
                    .line(h - 1)
                    .iter()
                    .filter(|&&v| {
                        let c = emb.children(v).len();
                        c > 0 && c < cap(h - 1)
                    })
                    .count();
                assert!(partial <= 1);
            }
        }
    }

    #[test]
    fn origin_subtrees_are_members_of_the_reduced_family() {
        for delta in 3..=5 {
            for n in 2..80 {
                let (t, emb) = member(delta, delta, n);
                for c in emb.children(0) {
                    let nodes = emb.subtree(c);
                    let mut keep = vec![false; n];
                    for &x in &nodes {
                        keep[x] = true;
                    }
                    let (sub, _) = t.induced(&keep, &[]);
                    assert!(
                        is_family_member(&sub, delta - 1, delta).unwrap(),
                        "delta {delta}, n {n}, child {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn capacity_is_increasing() {
        for (r, delta) in [(2, 3), (3, 3), (3, 4), (4, 4)] {
            for k in 0..8 {
                assert!(capacity(k, r, delta) < capacity(k + 1, r, delta));
            }
        }
    }

    #[test]
    fn member_minimizes_among_last_line_completions() {
        // completions without degree-2 nodes: each last-line node takes 0 or 2
        for k in 1..=3u32 {
            let full = capacity(k, 3, 3) as usize;
            let last = (capacity(k, 3, 3) - capacity(k - 1, 3, 3)) as usize;
            for m in 1..last {
                let extra = 2 * m;
                let (member, _) =
                    build_family_member(FamilyParams::new(3, 3, full + extra).unwrap()).unwrap();
                let best = sigma_ll(&member);
                let completions: Vec<Tree> = level_completions(3, 3, k, extra)
                    .unwrap()
                    .into_iter()
                    .filter(|t| (0..t.node_count()).all(|v| t.degree(v) != 2))
                    .collect();
                assert!(completions.iter().any(|t| unlabeled_isomorphic(t, &member)));
                for t in completions {
                    assert!(
                        sigma_ll(&t) > best || unlabeled_isomorphic(&t, &member),
                        "k {k}, extra {extra}"
                    );
                }
            }
        }
    }
}
