//! Upper bounds on `Σ_{l=2}^{k-1} F_l / (E X_k)^2`, term by term in `l`.
//!
//! For `p < 1/(2 ln n)` the range of `l` is split into four parts, each
//! with its own bound on the overlap counts. Otherwise a three-part split
//! is used. Every summand is evaluated as a natural log.

use std::f64::consts::E;

use serde::Serialize;

use super::expectation::{check_p_open, ln_b};
use super::logreal::log_sum_exp;
use super::partition::{partition_points, PartitionPoints};
use super::special::{ln_choose, ln_choose_real, pairs};
use crate::error::{out_of_range, Result};
use crate::oracle::{ln_f_real, FBranch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `p < 1/(2 ln n)`: parts 1 to 4.
    Small,
    /// `p >= 1/(2 ln n)`: parts A, B, C.
    Large,
}

pub fn regime(n: f64, p: f64) -> Regime {
    if p < 1.0 / (2.0 * n.ln()) {
        Regime::Small
    } else {
        Regime::Large
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub part: &'static str,
    pub ell: u64,
    pub log_summand: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartSum {
    pub part: &'static str,
    pub terms: usize,
    /// `ln` of the partial sum; `None` for an empty part.
    pub log_sum: Option<f64>,
}

impl PartSum {
    pub fn value(&self) -> f64 {
        self.log_sum.map_or(0.0, f64::exp)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VarianceBound {
    pub n: f64,
    pub p: f64,
    pub k: u64,
    pub regime: Regime,
    pub points: PartitionPoints,
    pub rows: Vec<Summand>,
    pub part_sums: Vec<PartSum>,
    /// `ln` of the grand total; `None` when there are no summands.
    pub log_total: Option<f64>,
}

/// `ln [C(k,l) C(n-k,k-l) / C(n,k)]`.
pub fn ln_overlap_ratio(n: u64, k: u64, l: u64) -> f64 {
    ln_choose(k, l) + ln_choose(n - k, k - l) - ln_choose(n, k)
}

/// Part 1 summand g(l), from the trivial overlap bound and the estimate
/// `C(k,l) C(n-k,k-l)/C(n,k) <= (k^2 e / (l n))^l`.
pub fn part1_log(n: f64, p: f64, k: f64, l: f64) -> f64 {
    k.ln() + l * (1.0 + 2.0 * k.ln() + (1.0 - l / 2.0) * (-p).ln_1p() - n.ln() - l.ln() - p.ln())
}

/// `ln F̂_l`.
pub fn ln_f_hat(n: u64, p: f64, k: u64, l: u64) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    ln_overlap_ratio(n, k, l) + pairs(lf) * ln_b(p) + (kf - 2.0) * (kf - lf).ln()
        + (kf - lf - 1.0) * (lf + 1.0).ln()
        - (kf - 3.0) * kf.ln()
}

/// `r* = l - λ/p` with `λ = (β l p / e)^(2/3)` and `β = (k - l) p`.
pub fn r_star(p: f64, k: f64, l: f64) -> f64 {
    let beta = (k - l) * p;
    let lambda = (beta * l * p / E).powf(2.0 / 3.0);
    l - lambda / p
}

/// `ln H(k, l, r) = ln [((1-p)/p)^r C(l, l-r) (l-r) l^(r-1) f(k,l,r)^2]` at
/// real `r`, with a log-gamma binomial.
pub fn ln_h(p: f64, k: f64, l: f64, r: f64) -> f64 {
    let q = (1.0 - p).ln() - p.ln();
    r * q + ln_choose_real(l, l - r) + (l - r).ln() + (r - 1.0) * l.ln() + 2.0 * ln_f_real(k, l, r)
}

/// Part 4 summand `ln Î_l`.
pub fn ln_i_hat(n: u64, p: f64, k: u64, l: u64) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    let q = (1.0 - p).ln() - p.ln();
    ln_overlap_ratio(n, k, l) - (kf - 2.0) * kf.ln() + pairs(lf) * ln_b(p) + lf.ln() + lf * q
        + (kf - lf - 1.0) * (lf + 1.0).ln()
        + (kf - lf - 2.0) * (kf - lf).ln()
        + lf * (kf - lf) * p / (E * (1.0 - p))
}

/// `ln f₀(k, r)` for the large-p tail, branch chosen on `l`.
fn ln_f0(k: f64, l: u64, r: u64) -> f64 {
    let (lf, rf) = (l as f64, r as f64);
    match FBranch::select(l, r).unwrap_or(FBranch::select_real(lf, rf)) {
        FBranch::Low => rf * 2f64.ln(),
        FBranch::Mid => k * (4.0f64 / 3.0).ln() + rf * (9.0f64 / 8.0).ln(),
        FBranch::High => (k - rf) * (lf / (lf - rf)).ln(),
    }
}

/// Evaluates every summand for `l` in `2..k` and the partial sums.
///
/// Each `l` goes to the first part whose upper boundary it does not
/// exceed. Parts with no `l` are reported empty.
pub fn variance_ratio_bound(n: u64, p: f64, k: u64, w: f64) -> Result<VarianceBound> {
    check_p_open(p)?;
    if k < 2 || k > n {
        return Err(out_of_range("k", k, format!("2..={n}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let points = partition_points(nf, p, kf, w)?;
    let regime = regime(nf, p);
    let lb = ln_b(p);
    let q = (1.0 - p).ln() - p.ln();
    let names: &[&'static str] = match regime {
        Regime::Small => &["1", "2", "3", "4"],
        Regime::Large => &["A", "B", "C"],
    };
    let mut rows = Vec::new();
    for l in 2..k {
        let lf = l as f64;
        let base = || ln_overlap_ratio(n, k, l) + pairs(lf) * lb + lf.ln();
        let (part, value) = match regime {
            Regime::Small => {
                if lf <= points.ell_star {
                    ("1", part1_log(nf, p, kf, lf))
                } else if lf <= points.k_minus_w_over_p.floor() {
                    ("2", ln_f_hat(n, p, k, l))
                } else if lf <= points.k_minus_half_over_p {
                    let r = r_star(p, kf, lf).clamp(0.0, lf - 1.0);
                    ("3", base() + ln_h(p, kf, lf, r) - 2.0 * (kf - 2.0) * kf.ln())
                } else {
                    ("4", ln_i_hat(n, p, k, l))
                }
            }
            Regime::Large => {
                if lf <= points.ell_1 {
                    ("A", base() + (lf - 1.0) * q.max(0.0))
                } else if lf <= points.k_minus_two_q {
                    ("B", ln_f_hat(n, p, k, l))
                } else {
                    let s = kf - lf;
                    let best = (0..l)
                        .map(|r| ln_f0(kf, l, r) + (kf - r as f64) * (s.ln() - q))
                        .fold(f64::NEG_INFINITY, f64::max);
                    let v = base() + (s - 1.0) * (lf + 1.0).ln() - 2.0 * s.ln() + kf * q + best
                        - (kf - 2.0) * kf.ln();
                    ("C", v)
                }
            }
        };
        rows.push(Summand {
            part,
            ell: l,
            log_summand: value,
        });
    }
    let part_sums: Vec<PartSum> = names
        .iter()
        .map(|&name| {
            let xs: Vec<f64> = rows.iter().filter(|r| r.part == name).map(|r| r.log_summand).collect();
            PartSum {
                part: name,
                terms: xs.len(),
                log_sum: (!xs.is_empty()).then(|| log_sum_exp(&xs)),
            }
        })
        .collect();
    let all: Vec<f64> = rows.iter().map(|r| r.log_summand).collect();
    Ok(VarianceBound {
        n: nf,
        p,
        k,
        regime,
        points,
        rows,
        part_sums,
        log_total: (!all.is_empty()).then(|| log_sum_exp(&all)),
    })
}
