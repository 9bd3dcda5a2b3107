//! E X_k and its Stirling form γ(k).

use std::f64::consts::PI;

use super::special::{ln_choose, neumaier_sum};
use super::LogReal;
use crate::error::{out_of_range, Error, Result};

pub(crate) fn check_p_open(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(out_of_range("p", p, "(0, 1)"))
    }
}

/// `ln (1/(1-p))`.
pub fn ln_b(p: f64) -> f64 {
    -(-p).ln_1p()
}

/// `ln E X_k = ln [C(n,k) k^(k-2) p^(k-1) (1-p)^(C(k,2)-k+1)]`.
pub fn log_expected_trees(n: u64, p: f64, k: u64) -> Result<LogReal> {
    check_p_open(p)?;
    if k < 1 || k > n {
        return Err(out_of_range("k", k, format!("1..={n}")));
    }
    let kf = k as f64;
    let non_edges = kf * (kf - 1.0) / 2.0 - kf + 1.0;
    let ln = neumaier_sum([
        ln_choose(n, k),
        (kf - 2.0) * kf.ln(),
        (kf - 1.0) * p.ln(),
        -non_edges * ln_b(p),
    ]);
    Ok(LogReal::from_ln(ln))
}

/// γ(k) at real `k > 1`.
pub fn gamma(n: f64, p: f64, k: f64) -> Result<f64> {
    check_p_open(p)?;
    if !(k > 1.0) {
        return Err(Error::Domain(format!("gamma needs k > 1, got {k}")));
    }
    Ok(gamma_unchecked(n, p, k))
}

pub(crate) fn gamma_unchecked(n: f64, p: f64, k: f64) -> f64 {
    let lb = ln_b(p);
    neumaier_sum([
        -0.5 * (2.0 * PI).ln(),
        k * n.ln(),
        k,
        -2.5 * k.ln(),
        (k - 1.0) * (p.ln() + lb),
        -k * (k - 1.0) / 2.0 * lb,
    ])
}

/// dγ/dk.
pub fn gamma_prime(n: f64, p: f64, k: f64) -> f64 {
    let lb = ln_b(p);
    n.ln() + 1.0 - 2.5 / k + p.ln() + lb - (k - 0.5) * lb
}
