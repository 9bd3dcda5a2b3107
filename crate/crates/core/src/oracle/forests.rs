use super::binomial;
use crate::error::{out_of_range, Result};

/// Largest forest size enumerated.
pub const MAX_FOREST_L: usize = 9;

/// Counts over all labeled forests on `0..l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestTable {
    pub l: usize,
    /// `by_edges[r]` = φ(l, r), for `r` in `0..l`.
    pub by_edges: Vec<u64>,
    /// `rooted[m]` = number of rooted forests with `m` trees (index 0 unused).
    pub rooted: Vec<u64>,
}

impl ForestTable {
    pub fn total(&self) -> u64 {
        self.by_edges.iter().sum()
    }
}

/// φ(l, r) with the matching rooted-forest counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCount {
    pub l: usize,
    pub r: usize,
    pub value: u64,
    /// Enumerated rooted forests with `l - r` trees.
    pub rooted_enumerated: u64,
    /// `C(l, m) m l^(l-m-1)` with `m = l - r`.
    pub rooted_closed_form: u128,
}

/// One line of the rooted-forest exponent comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedRow {
    pub m: usize,
    pub enumerated: u64,
    /// `C(l, m) m l^(l-m-1)`.
    pub minus_one: u128,
    /// `C(l, m) m l^(l-m+1)`.
    pub plus_one: u128,
}

/// Enumerates every forest on `0..l` by depth-first edge insertion.
pub fn forest_table(l: usize) -> Result<ForestTable> {
    if !(1..=MAX_FOREST_L).contains(&l) {
        return Err(out_of_range("l", l, format!("1..={MAX_FOREST_L}")));
    }
    let edges: Vec<(usize, usize)> = (1..l).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    let mut t = ForestTable {
        l,
        by_edges: vec![0; l],
        rooted: vec![0; l + 1],
    };
    let mut comp = [0u8; MAX_FOREST_L];
    for (v, c) in comp.iter_mut().enumerate() {
        *c = v as u8;
    }
    walk(&edges, 0, comp, 0, &mut t);
    Ok(t)
}

fn walk(edges: &[(usize, usize)], from: usize, comp: [u8; MAX_FOREST_L], r: usize, t: &mut ForestTable) {
    let l = t.l;
    t.by_edges[r] += 1;
    let mut sizes = [0u64; MAX_FOREST_L];
    for &c in &comp[..l] {
        sizes[c as usize] += 1;
    }
    t.rooted[l - r] += sizes.iter().filter(|&&s| s > 0).product::<u64>();
    for (i, &(a, b)) in edges.iter().enumerate().skip(from) {
        let (ca, cb) = (comp[a], comp[b]);
        if ca == cb {
            continue;
        }
        let mut next = comp;
        for c in next[..l].iter_mut() {
            if *c == cb {
                *c = ca;
            }
        }
        walk(edges, i + 1, next, r + 1, t);
    }
}

/// `C(n, m) m n^(n-m-1)`, exact; equals 1 when `m = n`.
fn rooted_closed_form(n: u64, m: u64, plus: bool) -> u128 {
    if m == 0 || m > n {
        return 0;
    }
    let e = if plus { n - m + 1 } else { n - m };
    let v = binomial(n, m) * u128::from(m) * u128::from(n).pow(e as u32);
    if plus {
        v
    } else {
        v / u128::from(n)
    }
}

/// The φ upper bound `C(l, l-r) (l-r) l^(r-1)`, exact.
pub fn phi_bound(l: usize, r: usize) -> u128 {
    rooted_closed_form(l as u64, (l - r) as u64, false)
}

pub fn count_forests(l: usize, r: usize) -> Result<ForestCount> {
    let t = forest_table(l)?;
    if r >= l {
        return Err(out_of_range("r", r, format!("0..{l}")));
    }
    Ok(ForestCount {
        l,
        r,
        value: t.by_edges[r],
        rooted_enumerated: t.rooted[l - r],
        rooted_closed_form: rooted_closed_form(l as u64, (l - r) as u64, false),
    })
}

/// Enumerated rooted-forest counts next to both candidate closed forms.
pub fn rooted_forest_check(l: usize) -> Result<Vec<RootedRow>> {
    let t = forest_table(l)?;
    Ok((1..=l)
        .map(|m| RootedRow {
            m,
            enumerated: t.rooted[m],
            minus_one: rooted_closed_form(l as u64, m as u64, false),
            plus_one: rooted_closed_form(l as u64, m as u64, true),
        })
        .collect())
}
