//! Restarted local search for Min Tree Length on layout trees.
//!
//! Moves are nearest-neighbor interchanges across internal edges and swaps
//! of two vertices' leaves. Move deltas are computed from the per-edge
//! vertex sides without rebuilding the layout.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Multigraph;
use crate::measures::{cut_weight, edge_sides, VertexSet};
use crate::tree::{other_two, Layout, LeafTree, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Nni,
    LeafSwap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    FirstImprovement,
    Steepest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub move_set: Vec<MoveKind>,
    pub strategy: Strategy,
    pub max_plateau_steps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            restarts: 10,
            move_set: vec![MoveKind::Nni, MoveKind::LeafSwap],
            strategy: Strategy::Steepest,
            max_plateau_steps: 20,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return invalid("restarts must be at least 1");
        }
        if self.move_set.is_empty() {
            return invalid("move set must not be empty");
        }
        Ok(())
    }
}

/// Summary of one restart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub initial_value: u64,
    pub best_value: u64,
    pub improving_moves: usize,
    pub plateau_moves: usize,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub layout: Layout,
    pub value: u64,
    /// Index of the restart that produced `layout`.
    pub best_restart: usize,
    pub trace: Vec<RestartTrace>,
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Uniformly random layout tree on `n` leaves: leaf `k` subdivides one of
/// the `2k − 3` existing edges, chosen uniformly. Vertex `v` sits on node `v`.
pub fn random_layout<R: Rng>(n: usize, rng: &mut R) -> Result<Layout> {
    if n < 3 {
        return invalid(format!("layout trees need at least 3 leaves, got {n}"));
    }
    let mut edges = vec![(0, n), (1, n), (2, n)];
    let mut next = n + 1;
    for k in 3..n {
        let i = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        edges[i] = (a, next);
        edges.push((next, b));
        edges.push((next, k));
        next += 1;
    }
    let tree = Tree::from_edges(next, edges)?;
    Layout::identity(LeafTree::cubic(tree)?)
}

/// Random starting layout for `g`, reproducible from `seed`.
pub fn initial_layout(g: &Multigraph, seed: u64) -> Result<Layout> {
    random_layout(g.vertex_count(), &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Nni { edge: usize, swap: usize },
    Swap { a: usize, b: usize },
}

struct State<'g> {
    n: usize,
    adj: &'g [Vec<(usize, u64)>],
    g: &'g Multigraph,
    layout: Layout,
    sides: Vec<VertexSet>,
    cuts: Vec<u64>,
    total: u64,
}

impl<'g> State<'g> {
    fn new(g: &'g Multigraph, adj: &'g [Vec<(usize, u64)>], layout: Layout) -> Self {
        let mut s = State {
            n: g.vertex_count(),
            adj,
            g,
            layout,
            sides: Vec::new(),
            cuts: Vec::new(),
            total: 0,
        };
        s.refresh();
        s
    }

    fn refresh(&mut self) {
        self.sides = edge_sides(&self.layout);
        self.cuts = self.sides.iter().map(|s| cut_weight(self.g, s)).collect();
        self.total = self.cuts.iter().sum();
    }

    fn tree(&self) -> &Tree {
        self.layout.tree().tree()
    }

    /// Vertices reached from `from` through its neighbor `to`.
    fn away(&self, from: usize, to: usize) -> VertexSet {
        let idx = self.tree().edge_index(from, to).expect("adjacent");
        if self.tree().edge(idx).unwrap().1 == to {
            self.sides[idx].clone()
        } else {
            self.sides[idx].complement(self.n)
        }
    }

    fn weight_into(&self, x: usize, side: &VertexSet, inside: bool) -> u64 {
        self.adj[x]
            .iter()
            .filter(|&&(y, _)| side.contains(y) == inside)
            .map(|&(_, m)| m)
            .sum()
    }

    fn delta(&self, mv: Move) -> i64 {
        match mv {
            Move::Nni { edge, swap } => {
                let (u, v) = self.tree().edge(edge).unwrap();
                let (a0, _) = other_two(self.tree(), u, v);
                let (b0, b1) = other_two(self.tree(), v, u);
                let b = if swap == 0 { b0 } else { b1 };
                let mut side = self.away(u, a0);
                side.union_with(&self.away(v, b));
                cut_weight(self.g, &side) as i64 - self.cuts[edge] as i64
            }
            Move::Swap { a, b } => {
                let tree = self.tree();
                let (la, lb) = (self.layout.leaf_of(a), self.layout.leaf_of(b));
                let (parent, _) = tree.rooted_order(la);
                let mut d = 0i64;
                let mut x = lb;
                while let Some(p) = parent[x] {
                    let idx = tree.edge_index(p, x).unwrap();
                    let side = &self.sides[idx];
                    // move `out` across the cut and `into` the other way
                    let (out, into) = if side.contains(a) { (a, b) } else { (b, a) };
                    let m_ab = self.g.multiplicity(a, b) as i64;
                    let out_in = self.weight_into(out, side, true) as i64;
                    let out_out = self.weight_into(out, side, false) as i64;
                    let in_in = self.weight_into(into, side, true) as i64;
                    let in_out = self.weight_into(into, side, false) as i64;
                    // the a-b edge crosses before and after; every other edge at
                    // `out` or `into` flips between crossing and not
                    d += (out_in - (out_out - m_ab)) + (in_out - (in_in - m_ab));
                    x = p;
                }
                d
            }
        }
    }

    fn apply(&mut self, mv: Move) {
        self.layout = match mv {
            Move::Nni { edge, swap } => {
                let t = self.layout.tree().nni(edge, swap).expect("internal edge");
                self.layout.with_tree(t).expect("same leaves")
            }
            Move::Swap { a, b } => self.layout.swap_vertices(a, b),
        };
        self.refresh();
    }

    fn moves(&self, kinds: &[MoveKind]) -> Vec<Move> {
        let mut out = Vec::new();
        if kinds.contains(&MoveKind::Nni) {
            let tree = self.tree();
            for (e, &(u, v)) in tree.edges().iter().enumerate() {
                if !tree.is_leaf(u) && !tree.is_leaf(v) {
                    out.push(Move::Nni { edge: e, swap: 0 });
                    out.push(Move::Nni { edge: e, swap: 1 });
                }
            }
        }
        if kinds.contains(&MoveKind::LeafSwap) {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    out.push(Move::Swap { a, b });
                }
            }
        }
        out
    }
}

fn run_restart(
    g: &Multigraph,
    adj: &[Vec<(usize, u64)>],
    config: &SearchConfig,
    restart: usize,
) -> Result<(Layout, RestartTrace)> {
    let mut rng = restart_rng(config.seed, restart);
    let start = random_layout(g.vertex_count(), &mut rng)?;
    let mut state = State::new(g, adj, start);
    let initial_value = state.total;
    let (mut improving, mut plateau, mut plateau_run) = (0, 0, 0);
    loop {
        let moves = state.moves(&config.move_set);
        let mut chosen: Option<(Move, i64)> = None;
        let mut zero = Vec::new();
        for &mv in &moves {
            let d = state.delta(mv);
            if d < 0 && chosen.is_none_or(|(_, best)| d < best) {
                chosen = Some((mv, d));
                if config.strategy == Strategy::FirstImprovement {
                    break;
                }
            } else if d == 0 {
                zero.push(mv);
            }
        }
        if let Some((mv, d)) = chosen {
            let before = state.total;
            state.apply(mv);
            debug_assert_eq!(state.total as i64, before as i64 + d);
            improving += 1;
            plateau_run = 0;
            continue;
        }
        if plateau_run < config.max_plateau_steps {
            if let Some(&mv) = zero.choose(&mut rng) {
                state.apply(mv);
                plateau += 1;
                plateau_run += 1;
                continue;
            }
        }
        break;
    }
    let trace = RestartTrace {
        restart,
        initial_value,
        best_value: state.total,
        improving_moves: improving,
        plateau_moves: plateau,
    };
    Ok((state.layout, trace))
}

/// Best layout over `config.restarts` independent descents. Restart `i`
/// draws from its own random stream, so adding restarts never changes the
/// earlier ones; ties go to the lowest restart index.
pub fn local_search(g: &Multigraph, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let n = g.vertex_count();
    if n < 3 {
        return invalid(format!("local search needs at least 3 vertices, got {n}"));
    }
    let mut adj = vec![Vec::new(); n];
    for (u, v, m) in g.edges() {
        adj[u].push((v, m));
        adj[v].push((u, m));
    }
    let runs: Vec<(Layout, RestartTrace)> = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(g, &adj, config, r))
        .collect::<Result<_>>()?;
    let best = runs
        .iter()
        .enumerate()
        .min_by_key(|(i, (_, t))| (t.best_value, *i))
        .map(|(i, _)| i)
        .expect("at least one restart");
    let trace = runs.iter().map(|(_, t)| t.clone()).collect();
    let (layout, t) = runs.into_iter().nth(best).unwrap();
    Ok(SearchResult {
        layout,
        value: t.best_value,
        best_restart: best,
        trace,
    })
}
