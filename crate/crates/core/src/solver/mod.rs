//! Maximum induced tree search.

mod branch;
mod bruteforce;
mod greedy;

pub use branch::{max_induced_tree, DEFAULT_BUDGET};
pub use bruteforce::{count_induced_trees, max_induced_tree_bruteforce, BRUTEFORCE_MAX_N};
pub use greedy::greedy_tree_lower_bound;

use crate::graph::VertexSet;

/// Outcome of a search. `witness` always induces a tree on `size` vertices.
/// When `optimal` is false the size is only a lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub size: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub optimal: bool,
}
