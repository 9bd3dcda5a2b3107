use super::SolveResult;
use crate::error::{out_of_range, Result};
use crate::graph::{Graph, VertexSet};

pub const BRUTEFORCE_MAX_N: usize = 20;

/// Exhaustive search over all vertex subsets. Refuses `n > 20`.
pub fn max_induced_tree_bruteforce(g: &Graph) -> Result<SolveResult> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(out_of_range("n", n, format!("0..={BRUTEFORCE_MAX_N}")));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let mut best = 0u32;
    let mut best_mask = 0u32;
    let mut checked = 0u64;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones();
        if size <= best {
            continue;
        }
        checked += 1;
        if induces_tree(&adj, mask) {
            best = size;
            best_mask = mask;
        }
    }
    let witness = VertexSet::from_vertices(n, (0..n).filter(|&v| best_mask >> v & 1 == 1))?;
    Ok(SolveResult {
        size: best as usize,
        witness,
        nodes_explored: checked,
        optimal: true,
    })
}

/// Number of `k`-subsets inducing a tree, i.e. X_k for this graph.
/// Refuses `n > 20`.
pub fn count_induced_trees(g: &Graph, k: usize) -> Result<u64> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(out_of_range("n", n, format!("0..={BRUTEFORCE_MAX_N}")));
    }
    if k == 0 || k > n {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let limit = 1u32 << n;
    let mut mask = (1u32 << k) - 1;
    let mut count = 0;
    while mask < limit {
        count += u64::from(induces_tree(&adj, mask));
        // Next subset of the same size (Gosper).
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(count)
}

fn induces_tree(adj: &[u32], mask: u32) -> bool {
    let size = mask.count_ones();
    let mut twice_edges = 0;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        twice_edges += (adj[v] & mask).count_ones();
    }
    if twice_edges != 2 * (size - 1) {
        return false;
    }
    let mut reach = 1u32 << mask.trailing_zeros();
    let mut frontier = reach;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !reach;
        reach |= new;
        frontier |= new;
    }
    reach == mask
}
