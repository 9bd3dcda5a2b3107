use std::collections::HashMap;

use serde::Serialize;

use super::{enumerate_labeled_trees, f_exact, pair_index, pairs_mask};
use crate::error::{out_of_range, Error, Result};

/// Largest `k` for extension counting.
pub const MAX_EXTENSION_K: usize = 8;

/// Number of trees on `0..k` whose induced subgraph on `0..l` is exactly
/// `forest`.
pub fn count_trees_extending_forest(k: usize, l: usize, forest: &[(usize, usize)]) -> Result<u64> {
    check_sizes(k, l)?;
    let mut comp: Vec<usize> = (0..l).collect();
    let mut mask = 0u64;
    for &(a, b) in forest {
        if a >= l || b >= l || a == b {
            return Err(Error::NotAForest(format!("edge ({a}, {b}) is not a pair inside 0..{l}")));
        }
        let (ca, cb) = (comp[a], comp[b]);
        if ca == cb {
            return Err(Error::NotAForest(format!("edge ({a}, {b}) closes a cycle")));
        }
        for c in comp.iter_mut() {
            if *c == cb {
                *c = ca;
            }
        }
        mask |= 1 << pair_index(a, b);
    }
    let keep = pairs_mask(l);
    Ok(enumerate_labeled_trees(k)?
        .filter(|t| t.edges & keep == mask)
        .count() as u64)
}

fn check_sizes(k: usize, l: usize) -> Result<()> {
    if !(1..=MAX_EXTENSION_K).contains(&k) {
        return Err(out_of_range("k", k, format!("1..={MAX_EXTENSION_K}")));
    }
    if !(1..=k).contains(&l) {
        return Err(out_of_range("l", l, format!("1..={k}")));
    }
    Ok(())
}

/// Largest extension count over all `r`-edge forests on `0..l`, against
/// f(k, l, r).
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRow {
    pub r: usize,
    pub forests: usize,
    pub max_count: u64,
    pub bound: f64,
    pub ok: bool,
}

/// Runs the extension bound over every forest on `0..l`, `l < k`.
pub fn extension_profile(k: usize, l: usize) -> Result<Vec<ExtensionRow>> {
    check_sizes(k, l)?;
    if l == k {
        return Err(out_of_range("l", l, format!("1..{k}")));
    }
    let keep = pairs_mask(l);
    let mut by_forest: HashMap<u64, u64> = HashMap::new();
    for t in enumerate_labeled_trees(k)? {
        *by_forest.entry(t.edges & keep).or_default() += 1;
    }
    // Every forest on 0..l extends to some tree, so all of them appear.
    let mut rows = Vec::with_capacity(l);
    for r in 0..l {
        let f = f_exact(k as u64, l as u64, r as u64)?;
        let counts: Vec<u64> = by_forest
            .iter()
            .filter(|(m, _)| m.count_ones() as usize == r)
            .map(|(_, &c)| c)
            .collect();
        let max_count = counts.iter().copied().max().unwrap_or(0);
        rows.push(ExtensionRow {
            r,
            forests: counts.len(),
            max_count,
            bound: f.to_f64(),
            ok: u128::from(max_count) * f.den <= f.num,
        });
    }
    Ok(rows)
}
