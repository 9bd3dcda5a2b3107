use super::pair_index;
use crate::error::{out_of_range, Result};

/// Largest `k` for which trees are enumerated.
pub const MAX_TREE_K: usize = 9;

/// A labeled tree on `0..k` as a pair mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    pub k: usize,
    pub edges: u64,
}

impl LabeledTree {
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        prufer_edges(self.edges)
    }
}

fn prufer_edges(mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        out.push(super::pair_of(rest.trailing_zeros() as usize));
        rest &= rest - 1;
    }
    out
}

/// Every labeled tree on `0..k`, each exactly once, by decoding all Prüfer
/// sequences in lexicographic order.
pub fn enumerate_labeled_trees(k: usize) -> Result<impl Iterator<Item = LabeledTree>> {
    if !(1..=MAX_TREE_K).contains(&k) {
        return Err(out_of_range("k", k, format!("1..={MAX_TREE_K}")));
    }
    let len = k.saturating_sub(2);
    let mut seq = vec![0usize; len];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let tree = LabeledTree {
            k,
            edges: decode(k, &seq),
        };
        // Odometer step; a length-0 sequence has a single value.
        done = true;
        for d in seq.iter_mut().rev() {
            *d += 1;
            if *d < k {
                done = false;
                break;
            }
            *d = 0;
        }
        Some(tree)
    }))
}

fn decode(k: usize, seq: &[usize]) -> u64 {
    match k {
        1 => return 0,
        2 => return 1 << pair_index(0, 1),
        _ => {}
    }
    let mut degree = [1u8; MAX_TREE_K];
    for &x in seq {
        degree[x] += 1;
    }
    let mut mask = 0u64;
    for &x in seq {
        let leaf = (0..k).find(|&j| degree[j] == 1).expect("a leaf exists");
        mask |= 1 << pair_index(leaf, x);
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let mut last = (0..k).filter(|&j| degree[j] == 1);
    let a = last.next().expect("two vertices remain");
    let b = last.next().expect("two vertices remain");
    mask | 1 << pair_index(a, b)
}
