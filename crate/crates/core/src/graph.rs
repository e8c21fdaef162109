//! Finite undirected multigraphs with edge multiplicities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

/// Undirected multigraph on vertices `0..n`. Parallel edges are stored as a
/// multiplicity per unordered pair; self-loops are not representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    pairs: BTreeMap<(usize, usize), u64>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Multigraph {
            n,
            pairs: BTreeMap::new(),
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Repeated pairs add up.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Multigraph::empty(n);
        for (u, v, mult) in edges {
            g.add_edge(u, v, mult)?;
        }
        Ok(g)
    }

    /// Simple graph from unordered pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, pairs.iter().map(|&(u, v)| (u, v, 1)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize, mult: u64) -> Result<()> {
        if u >= self.n || v >= self.n {
            return invalid(format!("edge {{{u},{v}}} out of range for {} vertices", self.n));
        }
        if u == v {
            return invalid(format!("self-loop at vertex {u}"));
        }
        if mult == 0 {
            return invalid("edge multiplicity must be positive");
        }
        *self.pairs.entry(key(u, v)).or_insert(0) += mult;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of distinct adjacent pairs.
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Total number of edges, parallel edges counted individually.
    pub fn edge_total(&self) -> u64 {
        self.pairs.values().sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        if u == v {
            return 0;
        }
        self.pairs.get(&key(u, v)).copied().unwrap_or(0)
    }

    /// Pairs `(u, v, mult)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.pairs.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn is_simple(&self) -> bool {
        self.pairs.values().all(|&m| m == 1)
    }

    /// Sum of multiplicities of edges at `v`.
    pub fn weighted_degree(&self, v: usize) -> u64 {
        self.edges()
            .filter(|&(a, b, _)| a == v || b == v)
            .map(|(_, _, m)| m)
            .sum()
    }

    pub fn min_degree(&self) -> u64 {
        let mut deg = vec![0u64; self.n];
        for (u, v, m) in self.edges() {
            deg[u] += m;
            deg[v] += m;
        }
        deg.into_iter().min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges()
            .filter_map(|(a, b, _)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Graph with every multiplicity multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return invalid("scaling factor must be positive");
        }
        Ok(Multigraph {
            n: self.n,
            pairs: self.pairs.iter().map(|(&k, &m)| (k, m * factor)).collect(),
        })
    }

    /// Copy with `extra` isolated vertices appended.
    pub fn with_extra_vertices(&self, extra: usize) -> Self {
        Multigraph {
            n: self.n + extra,
            pairs: self.pairs.clone(),
        }
    }

    /// True when every vertex of `set` is pairwise adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && self.multiplicity(u, v) > 0)
        })
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs(0).iter().all(|d| d.is_some())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v, _) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn bfs(&self, src: usize) -> Vec<Option<u64>> {
        bfs_from(&self.adjacency(), src)
    }

    /// Shortest-path distances between all pairs; `None` when unreachable.
    pub fn all_pairs_distances(&self) -> Vec<Vec<Option<u64>>> {
        let adj = self.adjacency();
        (0..self.n).map(|s| bfs_from(&adj, s)).collect()
    }
}

fn bfs_from(adj: &[Vec<usize>], src: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &adj[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Complete graph on `n` vertices with every pair joined by `multiplicity` edges.
pub fn complete_graph(n: usize, multiplicity: u64) -> Result<Multigraph> {
    if n == 0 {
        return invalid("complete graph needs at least one vertex");
    }
    if multiplicity == 0 {
        return invalid("multiplicity must be positive");
    }
    let mut g = Multigraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.pairs.insert((u, v), multiplicity);
        }
    }
    Ok(g)
}

/// Complement of a simple graph.
pub fn complement(g: &Multigraph) -> Result<Multigraph> {
    if !g.is_simple() {
        return invalid("complement is only defined for simple graphs");
    }
    let mut out = Multigraph::empty(g.n);
    for u in 0..g.n {
        for v in u + 1..g.n {
            if g.multiplicity(u, v) == 0 {
                out.pairs.insert((u, v), 1);
            }
        }
    }
    Ok(out)
}

/// Union on a shared vertex set; multiplicities add.
pub fn edge_disjoint_union(g1: &Multigraph, g2: &Multigraph) -> Result<Multigraph> {
    if g1.n != g2.n {
        return invalid(format!(
            "vertex counts differ: {} vs {}",
            g1.n, g2.n
        ));
    }
    let mut out = g1.clone();
    for (u, v, m) in g2.edges() {
        *out.pairs.entry((u, v)).or_insert(0) += m;
    }
    Ok(out)
}

/// Parses the text graph format: a header `n m_pairs`, then one `u v [mult]`
/// line per pair. `#` starts a comment.
pub fn read_graph(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header line".into()))?;
    let nums = parse_numbers(header).map_err(|m| parse_err(hline, m))?;
    let [n, m_pairs] = nums[..] else {
        return Err(parse_err(hline, "header must be `n m_pairs`".into()));
    };
    let n = n as usize;

    let mut g = Multigraph::empty(n);
    let mut seen = 0u64;
    for (line, content) in lines {
        let nums = parse_numbers(content).map_err(|m| parse_err(line, m))?;
        let (u, v, mult) = match nums[..] {
            [u, v] => (u, v, 1),
            [u, v, mult] => (u, v, mult),
            _ => return Err(parse_err(line, "expected `u v [mult]`".into())),
        };
        let (u, v) = (u as usize, v as usize);
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex index out of range 0..{n}")));
        }
        if mult == 0 {
            return Err(parse_err(line, "multiplicity must be positive".into()));
        }
        g.add_edge(u, v, mult)
            .map_err(|e| parse_err(line, e.to_string()))?;
        seen += 1;
    }
    if seen != m_pairs {
        return Err(parse_err(
            hline,
            format!("header announces {m_pairs} pairs, found {seen}"),
        ));
    }
    Ok(g)
}

fn parse_numbers(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| format!("not a number: `{t}`")))
        .collect()
}

/// Writes the graph in canonical form: pairs sorted, multiplicity omitted when 1.
pub fn write_graph(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.n, g.pair_count());
    for (u, v, m) in g.edges() {
        if m == 1 {
            let _ = writeln!(out, "{u} {v}");
        } else {
            let _ = writeln!(out, "{u} {v} {m}");
        }
    }
    out
}

/// Partition of the vertex set into non-empty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Validates that `blocks` partitions `0..n`. Blocks are sorted internally
    /// and ordered by their smallest element.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &mut blocks {
            if b.is_empty() {
                return invalid("partition has an empty block");
            }
            b.sort_unstable();
            for &v in b.iter() {
                if v >= n {
                    return invalid(format!("vertex {v} out of range"));
                }
                if !seen.insert(v) {
                    return invalid(format!("vertex {v} appears in two blocks"));
                }
            }
        }
        if seen.len() != n {
            return invalid("partition does not cover every vertex");
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(VertexPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Every block induces a clique in `g`.
    pub fn all_cliques(&self, g: &Multigraph) -> bool {
        self.blocks.iter().all(|b| g.is_clique(b))
    }

    /// Multiset of block sizes, sorted.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}
