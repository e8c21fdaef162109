//! Backtracking clique cover with prescribed block sizes.

use crate::error::{invalid, Result};
use crate::graph::{Multigraph, VertexPartition};

/// Partitions the vertices into cliques whose sizes are a permutation of
/// `sizes`, or `None` if no such partition exists.
pub fn solve_clique_cover(g: &Multigraph, sizes: &[usize]) -> Result<Option<VertexPartition>> {
    let n = g.vertex_count();
    if sizes.iter().sum::<usize>() != n {
        return invalid(format!("block sizes sum to {} but the graph has {n} vertices", sizes.iter().sum::<usize>()));
    }
    if sizes.contains(&0) {
        return invalid("block sizes must be positive");
    }
    if !g.is_simple() {
        return invalid("clique cover needs a simple graph");
    }
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.multiplicity(u, v) > 0).collect())
        .collect();
    let mut remaining = sizes.to_vec();
    remaining.sort_unstable();
    let mut used = vec![false; n];
    let mut blocks = Vec::new();
    if search(&adj, &mut used, &mut remaining, &mut blocks) {
        Ok(Some(VertexPartition::new(n, blocks)?))
    } else {
        Ok(None)
    }
}

// the smallest unused vertex always opens the next block
fn search(adj: &[Vec<bool>], used: &mut [bool], remaining: &mut Vec<usize>, blocks: &mut Vec<Vec<usize>>) -> bool {
    let Some(first) = used.iter().position(|&u| !u) else {
        return true;
    };
    let mut sizes = remaining.clone();
    sizes.dedup();
    for size in sizes {
        let at = remaining.iter().position(|&s| s == size).unwrap();
        remaining.remove(at);
        used[first] = true;
        let mut block = vec![first];
        if extend(adj, used, remaining, blocks, &mut block, size, first + 1) {
            return true;
        }
        used[first] = false;
        remaining.insert(at, size);
    }
    false
}

fn extend(
    adj: &[Vec<bool>],
    used: &mut [bool],
    remaining: &mut Vec<usize>,
    blocks: &mut Vec<Vec<usize>>,
    block: &mut Vec<usize>,
    size: usize,
    from: usize,
) -> bool {
    if block.len() == size {
        blocks.push(block.clone());
        if search(adj, used, remaining, blocks) {
            return true;
        }
        blocks.pop();
        return false;
    }
    for v in from..adj.len() {
        if !used[v] && block.iter().all(|&u| adj[u][v]) {
            used[v] = true;
            block.push(v);
            if extend(adj, used, remaining, blocks, block, size, v + 1) {
                return true;
            }
            block.pop();
            used[v] = false;
        }
    }
    false
}
