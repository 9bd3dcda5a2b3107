//! Boundaries of the split of `{2, .., k-1}` used by the variance bounds.

use std::f64::consts::E;

use serde::Serialize;

use super::expectation::{check_p_open, ln_b};
use crate::error::{out_of_range, Result};

/// Default growth exponent of `w(n) = (ln n)^exponent`.
pub const DEFAULT_W_EXPONENT: f64 = 0.25;

pub fn default_w(n: f64) -> f64 {
    n.ln().powf(DEFAULT_W_EXPONENT)
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionPoints {
    pub k: f64,
    pub w: f64,
    /// `(2 ln(np) - 2 ln(4ek)) / ln b`
    pub ell_star: f64,
    /// `k - w/p`
    pub k_minus_w_over_p: f64,
    /// `k - 1/(2p)`
    pub k_minus_half_over_p: f64,
    /// `2 ln n / ln b - 16 ln ln n / ln b`
    pub ell_1: f64,
    /// `k - 3(1-p)/p`
    pub ell_2: f64,
    /// `k - 2(1-p)/p`
    pub k_minus_two_q: f64,
    /// `2 <= ell_star <= k - w/p <= k - 1/(2p) <= k - 1`.
    pub ordered: bool,
}

pub fn partition_points(n: f64, p: f64, k: f64, w: f64) -> Result<PartitionPoints> {
    check_p_open(p)?;
    if !(w > 0.0) {
        return Err(out_of_range("w", w, "(0, inf)"));
    }
    let lb = ln_b(p);
    let ell_star = (2.0 * (n * p).ln() - 2.0 * (4.0 * E * k).ln()) / lb;
    let kw = k - w / p;
    let kh = k - 1.0 / (2.0 * p);
    let ell_1 = 2.0 * n.ln() / lb - 16.0 * n.ln().ln() / lb;
    Ok(PartitionPoints {
        k,
        w,
        ell_star,
        k_minus_w_over_p: kw,
        k_minus_half_over_p: kh,
        ell_1,
        ell_2: k - 3.0 * (1.0 - p) / p,
        k_minus_two_q: k - 2.0 * (1.0 - p) / p,
        ordered: 2.0 <= ell_star && ell_star <= kw && kw <= kh && kh <= k - 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_star_base_e() {
        let p = 1.0 - (-1f64).exp();
        let k = 10.0;
        let n = 4.0 * E * k * E / p;
        let pts = partition_points(n, p, k, 1.0).unwrap();
        assert!((pts.ell_star - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_w() {
        assert!(partition_points(1e6, 0.1, 50.0, 0.0).is_err());
        assert!(partition_points(1e6, 0.1, 50.0, f64::NAN).is_err());
    }
}
