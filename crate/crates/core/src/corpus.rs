//! Named small graphs shipped with the binary.
//!
//! Names take the form `family:n` (`path:6`, `cycle:8`, `star:8`,
//! `complete:5`, `complete-minus-matching:8`) or are fixed graphs (`q3`,
//! `two-k4-joined`).

use crate::error::{invalid, Result};
use crate::graph::{complete_graph, Multigraph};

/// The standard corpus, in a fixed order.
pub const BUILTIN_NAMES: &[&str] = &[
    "path:4",
    "path:6",
    "cycle:5",
    "cycle:6",
    "star:5",
    "complete:4",
    "complete:5",
    "complete-minus-matching:6",
    "cycle:8",
    "star:8",
    "complete:8",
    "complete-minus-matching:8",
    "two-k4-joined",
    "q3",
];

pub fn builtin(name: &str) -> Result<Multigraph> {
    match name {
        "q3" => return hypercube(3),
        "two-k4-joined" => {
            let mut pairs = Vec::new();
            for base in [0, 4] {
                for u in 0..4 {
                    for v in u + 1..4 {
                        pairs.push((base + u, base + v));
                    }
                }
            }
            pairs.extend([(0, 4), (1, 5), (3, 6)]);
            return Multigraph::from_pairs(8, &pairs);
        }
        _ => {}
    }
    let Some((family, size)) = name.split_once(':') else {
        return invalid(format!("unknown builtin graph `{name}`"));
    };
    let n: usize = size
        .parse()
        .map_err(|_| crate::Error::InvalidArgument(format!("bad size in `{name}`")))?;
    match family {
        "path" => path(n),
        "cycle" => cycle(n),
        "star" => star(n),
        "complete" => complete_graph(n, 1),
        "complete-minus-matching" => complete_minus_matching(n),
        "hypercube" => hypercube(n),
        _ => invalid(format!("unknown builtin graph family `{family}`")),
    }
}

/// Every graph of [`BUILTIN_NAMES`] with its name.
pub fn builtin_graphs() -> Vec<(&'static str, Multigraph)> {
    BUILTIN_NAMES
        .iter()
        .map(|&name| (name, builtin(name).expect("builtin names are valid")))
        .collect()
}

pub fn path(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return invalid("a path needs at least 2 vertices");
    }
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Multigraph::from_pairs(n, &pairs)
}

pub fn cycle(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return invalid("a cycle needs at least 3 vertices");
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::from_pairs(n, &pairs)
}

/// `K_{1,n−1}` with centre 0.
pub fn star(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return invalid("a star needs at least 2 vertices");
    }
    let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Multigraph::from_pairs(n, &pairs)
}

/// `K_n` without the matching `{0,1}, {2,3}, …`.
pub fn complete_minus_matching(n: usize) -> Result<Multigraph> {
    if n < 2 || n % 2 == 1 {
        return invalid("complete-minus-matching needs an even vertex count");
    }
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
        .collect();
    Multigraph::from_pairs(n, &pairs)
}

pub fn hypercube(d: usize) -> Result<Multigraph> {
    if d == 0 || d > 6 {
        return invalid("hypercube dimension must be in 1..=6");
    }
    let n = 1 << d;
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Multigraph::from_pairs(n, &pairs)
}
