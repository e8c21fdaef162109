//! Embedding communication graphs into routing and layout trees.
//!
//! The crate computes dilation, congestion and tree length of a graph laid
//! out on the leaves of a tree, builds the level-filled tree family that
//! minimizes the sum of leaf-to-leaf distances, solves Min Tree Length
//! exactly on small instances, and builds the clique-cover gadgets whose
//! optima encode hard partition problems.

pub mod canonical;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod graph;
pub mod measures;
pub mod reductions;
pub mod search;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Multigraph, VertexPartition};
pub use tree::{Layout, LeafTree, RootedBinaryTree, Tree};
