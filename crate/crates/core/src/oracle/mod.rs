//! Exhaustive counting of labeled trees, forests and overlapping tree pairs,
//! and checks of the counting bounds against those counts.
//!
//! Vertices are `0..k`. Edge sets are bitmasks over vertex pairs indexed
//! by [`pair_index`], which does not depend on the number of vertices, so
//! the edges inside `0..l` are exactly the lowest `C(l, 2)` bits.

mod bounds;
mod extension;
mod forests;
mod overlap;
mod prufer;

pub use bounds::{f_exact, f_piecewise, ln_f_real, FBranch, Ratio};
pub use extension::{count_trees_extending_forest, extension_profile, ExtensionRow};
pub use forests::{
    count_forests, forest_table, phi_bound, rooted_forest_check, ForestCount, ForestTable,
    RootedRow,
};
pub use overlap::{
    count_overlap_pairs, validate_overlap_bounds, BoundRow, OverlapReport, OverlapTable,
    ProductCheck,
};
pub use prufer::{enumerate_labeled_trees, LabeledTree, MAX_TREE_K};

/// Index of the pair `{a, b}` in the colexicographic order of pairs.
#[inline]
pub const fn pair_index(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi * (hi - 1) / 2 + lo
}

/// Inverse of [`pair_index`].
pub fn pair_of(index: usize) -> (usize, usize) {
    let mut hi = 1;
    while (hi + 1) * hi / 2 <= index {
        hi += 1;
    }
    (index - hi * (hi - 1) / 2, hi)
}

/// Mask of all pairs inside `0..l`.
#[inline]
pub const fn pairs_mask(l: usize) -> u64 {
    let m = l * l.saturating_sub(1) / 2;
    if m >= 64 {
        !0
    } else {
        (1u64 << m) - 1
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing() {
        let mut seen = Vec::new();
        for b in 1..9 {
            for a in 0..b {
                let i = pair_index(a, b);
                assert_eq!(pair_of(i), (a, b));
                seen.push(i);
            }
        }
        seen.sort();
        assert_eq!(seen, (0..36).collect::<Vec<_>>());
        assert_eq!(pairs_mask(4), 0b111111);
        assert_eq!(pairs_mask(1), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(36, 18), 9075135300);
        assert_eq!(binomial(3, 5), 0);
    }
}
