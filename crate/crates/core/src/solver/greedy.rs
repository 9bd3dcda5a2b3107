use rand::Rng;

use super::SolveResult;
use crate::graph::{Graph, VertexSet};
use crate::seed::Seed;

/// Randomized greedy growth with restarts. Each restart picks a uniform
/// start vertex, then repeatedly adds a uniform vertex among those with
/// exactly one neighbour in the tree until none is left. All restarts draw
/// from the single RNG stream of `seed`. Never claims optimality.
pub fn greedy_tree_lower_bound(g: &Graph, restarts: usize, seed: Seed) -> SolveResult {
    let n = g.n();
    let w = g.stride();
    let mut rng = seed.rng();
    let mut best: Vec<usize> = Vec::new();
    let mut steps = 0u64;
    let mut tree = Vec::new();
    let mut frontier = vec![0u64; w];
    let mut untouched = vec![0u64; w];
    let mut members = Vec::new();
    if n > 0 {
        for _ in 0..restarts.max(1) {
            let s = rng.random_range(0..n);
            tree.clear();
            tree.push(s);
            let row = g.row(s);
            for i in 0..w {
                let valid = if (i + 1) * 64 <= n { !0 } else { !0u64 >> ((i + 1) * 64 - n) };
                frontier[i] = row[i];
                untouched[i] = !row[i] & valid;
            }
            untouched[s / 64] &= !(1 << (s % 64));
            loop {
                members.clear();
                members.extend(crate::graph::iter_bits(&frontier));
                if members.is_empty() {
                    break;
                }
                steps += 1;
                let v = members[rng.random_range(0..members.len())];
                let row = g.row(v);
                for i in 0..w {
                    frontier[i] = (frontier[i] & !row[i]) | (untouched[i] & row[i]);
                    untouched[i] &= !row[i];
                }
                frontier[v / 64] &= !(1 << (v % 64));
                tree.push(v);
            }
            if tree.len() > best.len() {
                best.clone_from(&tree);
            }
        }
    }
    SolveResult {
        size: best.len(),
        witness: VertexSet::from_vertices(n, best.iter().copied()).expect("witness in range"),
        nodes_explored: steps,
        optimal: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_gnp;
    use crate::solver::{max_induced_tree, DEFAULT_BUDGET};

    #[test]
    fn easy_graphs() {
        let r = greedy_tree_lower_bound(&Graph::path(5).unwrap(), 1, Seed::new(3, 0));
        assert_eq!(r.size, 5);
        assert!(!r.optimal);
        let r = greedy_tree_lower_bound(&Graph::empty(5).unwrap(), 4, Seed::new(3, 0));
        assert_eq!(r.size, 1);
        assert_eq!(greedy_tree_lower_bound(&Graph::empty(0).unwrap(), 4, Seed::default()).size, 0);
    }

    #[test]
    fn below_exact_and_deterministic() {
        let g = sample_gnp(40, 0.4, Seed::new(8, 1)).unwrap();
        let a = greedy_tree_lower_bound(&g, 100, Seed::new(1, 2));
        assert_eq!(a, greedy_tree_lower_bound(&g, 100, Seed::new(1, 2)));
        assert!(g.induced_subgraph(&a.witness).unwrap().is_tree());
        let exact = max_induced_tree(&g, DEFAULT_BUDGET);
        assert!(exact.optimal);
        assert!(a.size <= exact.size);
    }
}
