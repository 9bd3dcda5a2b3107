use serde::Serialize;

use super::{enumerate_labeled_trees, f_exact, forest_table, pair_index, pairs_mask, LabeledTree};
use crate::error::{out_of_range, Result};

/// Largest tree size for pair enumeration.
pub const MAX_OVERLAP_K: usize = 6;

/// Pair counts for trees `T1` on `0..k` and `T2` on `k-l..2k-l`, which
/// share the `l` vertices `k-l..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapTable {
    pub k: usize,
    pub l: usize,
    /// `counts[r]`: pairs whose edge sets share exactly `r` edges inside the
    /// common vertices. Sums to `(k^(k-2))^2`.
    pub counts: Vec<u64>,
    /// `agreeing[r]`: pairs that induce the same `r`-edge forest on the
    /// common vertices, i.e. pairs that can both be induced trees of one
    /// graph.
    pub agreeing: Vec<u64>,
}

/// Restriction of a tree to the vertices `offset..offset + l`, relabelled
/// to `0..l`.
fn restrict(t: &LabeledTree, offset: usize, l: usize) -> u64 {
    if offset == 0 {
        return t.edges & pairs_mask(l);
    }
    let mut out = 0u64;
    for (a, b) in t.edge_list() {
        if a >= offset && b >= offset && a < offset + l && b < offset + l {
            out |= 1 << pair_index(a - offset, b - offset);
        }
    }
    out
}

/// Exact counts by enumerating every pair of trees.
pub fn count_overlap_pairs(k: usize, l: usize) -> Result<OverlapTable> {
    if !(2..=MAX_OVERLAP_K).contains(&k) {
        return Err(out_of_range("k", k, format!("2..={MAX_OVERLAP_K}")));
    }
    if !(2..=k).contains(&l) {
        return Err(out_of_range("l", l, format!("2..={k}")));
    }
    let trees: Vec<LabeledTree> = enumerate_labeled_trees(k)?.collect();
    let first: Vec<u64> = trees.iter().map(|t| restrict(t, k - l, l)).collect();
    let second: Vec<u64> = trees.iter().map(|t| restrict(t, 0, l)).collect();
    let mut counts = vec![0u64; l];
    let mut agreeing = vec![0u64; l];
    for &a in &first {
        for &b in &second {
            counts[(a & b).count_ones() as usize] += 1;
            if a == b {
                agreeing[a.count_ones() as usize] += 1;
            }
        }
    }
    Ok(OverlapTable {
        k,
        l,
        counts,
        agreeing,
    })
}

/// One `r` of a bound check. `n` is the agreeing count and decides `ok`;
/// the all-pairs count is checked alongside for information.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub r: usize,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "N_all")]
    pub n_all: u64,
    /// `(k^(k-2))^2`
    pub bound1: f64,
    /// `k^(k-2) f(k, l, r)`; absent when `l = k`.
    pub bound2: Option<f64>,
    /// `φ(l, r) f(k, l, r)^2`; absent when `l = k`.
    pub bound3: Option<f64>,
    pub slack1: f64,
    pub slack2: Option<f64>,
    pub slack3: Option<f64>,
    pub ok: bool,
    pub ok_all: bool,
}

/// `N ((1-p)/p)^r <= k^(k-2) (k-l)^(k-2) (l+1)^(k-l-1)`, checked where
/// `l <= k - 2(1-p)/p`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub p: f64,
    pub r: usize,
    pub applicable: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapReport {
    pub k: usize,
    pub l: usize,
    pub rows: Vec<BoundRow>,
    pub product: Vec<ProductCheck>,
}

impl OverlapReport {
    /// Every applicable bound holds for the agreeing counts.
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok) && self.product.iter().all(|c| c.ok)
    }

    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok).count() + self.product.iter().filter(|c| !c.ok).count()
    }
}

/// Checks the three counting bounds for every `r`, and the product bound
/// at each `p` in `ps`. Violations are reported, never raised.
pub fn validate_overlap_bounds(k: usize, l: usize, ps: &[f64]) -> Result<OverlapReport> {
    let table = count_overlap_pairs(k, l)?;
    let phi = forest_table(l)?;
    let trees = (k as u128).pow(k as u32 - 2);
    let b1 = trees * trees;
    let mut rows = Vec::with_capacity(l);
    for r in 0..l {
        let n = u128::from(table.agreeing[r]);
        let n_all = u128::from(table.counts[r]);
        let (mut bound2, mut bound3, mut ok2, mut ok3) = (None, None, true, true);
        let (mut ok2_all, mut ok3_all) = (true, true);
        if l < k {
            let f = f_exact(k as u64, l as u64, r as u64)?;
            let ph = u128::from(phi.by_edges[r]);
            bound2 = Some(trees as f64 * f.to_f64());
            bound3 = Some(ph as f64 * f.to_f64() * f.to_f64());
            ok2 = n * f.den <= trees * f.num;
            ok3 = n * f.den * f.den <= ph * f.num * f.num;
            ok2_all = n_all * f.den <= trees * f.num;
            ok3_all = n_all * f.den * f.den <= ph * f.num * f.num;
        }
        let nf = n as f64;
        rows.push(BoundRow {
            r,
            n: table.agreeing[r],
            n_all: table.counts[r],
            bound1: b1 as f64,
            bound2,
            bound3,
            slack1: b1 as f64 - nf,
            slack2: bound2.map(|b| b - nf),
            slack3: bound3.map(|b| b - nf),
            ok: n <= b1 && ok2 && ok3,
            ok_all: n_all <= b1 && ok2_all && ok3_all,
        });
    }
    let mut product = Vec::new();
    let (kf, lf) = (k as f64, l as f64);
    for &p in ps {
        let applicable = lf <= kf - 2.0 * (1.0 - p) / p;
        let rhs = (kf.powi(k as i32 - 2)) * (kf - lf).powi(k as i32 - 2) * (lf + 1.0).powi((k - l) as i32 - 1);
        for r in 0..l {
            let lhs = table.agreeing[r] as f64 * ((1.0 - p) / p).powi(r as i32);
            product.push(ProductCheck {
                p,
                r,
                applicable,
                lhs,
                rhs,
                ok: !applicable || lhs <= rhs * (1.0 + 1e-12),
            });
        }
    }
    Ok(OverlapReport { k, l, rows, product })
}
