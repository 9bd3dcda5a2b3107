//! k*, ε, k̂, the threshold g(n) and the collected [`MomentProfile`].

use std::f64::consts::{E, PI};

use serde::Serialize;

use super::expectation::{check_p_open, gamma_prime, gamma_unchecked, ln_b};
use super::partition::{partition_points, default_w};
use crate::error::{Error, Result};

/// Tolerance on |γ(k̂)|.
pub const ROOT_TOL: f64 = 1e-9;

/// Distance from an integer below which a floor is flagged as unstable.
pub const NEAR_TIE: f64 = 1e-6;

/// `k* = (2 / ln b)(ln(np) + 1 + (3/2) ln b)`.
pub fn k_star(n: f64, p: f64) -> f64 {
    let lb = ln_b(p);
    2.0 / lb * ((n * p).ln() + 1.0 + 1.5 * lb)
}

/// `2 log_b(enp) + 3 ln p / (2 ln(np)) + 3`, the asymptotic k̂ without its
/// vanishing term.
pub fn k_hat_closed_form(n: f64, p: f64) -> f64 {
    2.0 * (E * n * p).ln() / ln_b(p) + 3.0 * p.ln() / (2.0 * (n * p).ln()) + 3.0
}

/// `ε = (2/(k* p)) ((5/2) ln k* + ln p + (1/2) ln 2π)`, again without the
/// vanishing term, so that `k̂ ≈ k* - ε`.
pub fn epsilon_closed_form(n: f64, p: f64) -> f64 {
    let ks = k_star(n, p);
    2.0 / (ks * p) * (2.5 * ks.ln() + p.ln() + 0.5 * (2.0 * PI).ln())
}

#[derive(Clone, Debug, Serialize)]
pub struct KHat {
    /// Root of γ from bisection.
    pub k_hat: f64,
    pub gamma_at_root: f64,
    /// Maximizer of γ, the left end of the bracket.
    pub argmax: f64,
    pub k_star: f64,
    pub closed_form: f64,
    /// `k_hat - closed_form`.
    pub gap: f64,
    /// `k_star - k_hat`.
    pub epsilon: f64,
    pub epsilon_closed_form: f64,
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo_pos = f(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == flo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves γ(k) = 0 past the maximizer of γ by bisection.
///
/// γ' is decreasing for `k > sqrt(5 / (2 ln b))`, so the maximizer is found
/// by bisecting γ' from there up to k*, and the root by bisecting γ on
/// [maximizer, k*].
pub fn solve_k_hat(n: f64, p: f64) -> Result<KHat> {
    check_p_open(p)?;
    if !(n * p > 1.0) {
        return Err(Error::Domain(format!("k-hat needs np > 1, got np = {}", n * p)));
    }
    let lb = ln_b(p);
    let ks = k_star(n, p);
    let start = (2.5 / lb).sqrt().max(1.0 + 1e-9);
    let g = |k: f64| gamma_unchecked(n, p, k);
    let argmax = if start >= ks || gamma_prime(n, p, start) <= 0.0 {
        start
    } else {
        bisect(|k| gamma_prime(n, p, k), start, ks)
    };
    let (glo, ghi) = (g(argmax), g(ks));
    if !(glo > 0.0 && ghi < 0.0) {
        return Err(Error::Bracket {
            lo: argmax,
            hi: ks,
            gamma_lo: glo,
            gamma_hi: ghi,
        });
    }
    let root = bisect(g, argmax, ks);
    let gr = g(root);
    if gr.abs() > ROOT_TOL {
        return Err(Error::Domain(format!(
            "bisection stalled at k = {root} with gamma = {gr:e}"
        )));
    }
    let cf = k_hat_closed_form(n, p);
    Ok(KHat {
        k_hat: root,
        gamma_at_root: gr,
        argmax,
        k_star: ks,
        closed_form: cf,
        gap: root - cf,
        epsilon: ks - root,
        epsilon_closed_form: epsilon_closed_form(n, p),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub value: i64,
    /// The expression before flooring.
    pub raw: f64,
    /// `raw` lies within [`NEAR_TIE`] of an integer.
    pub near_tie: bool,
}

/// `g = floor(2 log_b(enp) + δ)`.
pub fn g_threshold(n: f64, p: f64, delta: f64) -> Result<Threshold> {
    check_p_open(p)?;
    if !(n * p > 1.0) {
        return Err(Error::Domain(format!("threshold needs np > 1, got np = {}", n * p)));
    }
    let raw = 2.0 * (E * n * p).ln() / ln_b(p) + delta;
    Ok(Threshold {
        value: raw.floor() as i64,
        raw,
        near_tie: (raw - raw.round()).abs() < NEAR_TIE,
    })
}

/// Derived quantities for one `(n, p)`. Partition points are evaluated at
/// `k = floor(k̂ - 1/2)`, the size whose existence the second moment
/// argument targets.
#[derive(Clone, Debug, Serialize)]
pub struct MomentProfile {
    pub n: f64,
    pub p: f64,
    pub b: f64,
    pub k_star: f64,
    pub epsilon: f64,
    pub epsilon_closed_form: f64,
    pub k_hat: f64,
    pub k_hat_closed_form: f64,
    pub k_hat_gap: f64,
    pub gamma_argmax: f64,
    pub delta: f64,
    pub g: Threshold,
    pub k: u64,
    pub w: f64,
    pub ell_star: f64,
    pub ell_1: f64,
    pub ell_2: f64,
}

pub fn moment_profile(n: f64, p: f64, delta: f64) -> Result<MomentProfile> {
    let kh = solve_k_hat(n, p)?;
    let g = g_threshold(n, p, delta)?;
    let k = (kh.k_hat - 0.5).floor().max(2.0) as u64;
    let w = default_w(n);
    let pts = partition_points(n, p, k as f64, w)?;
    Ok(MomentProfile {
        n,
        p,
        b: 1.0 / (1.0 - p),
        k_star: kh.k_star,
        epsilon: kh.epsilon,
        epsilon_closed_form: kh.epsilon_closed_form,
        k_hat: kh.k_hat,
        k_hat_closed_form: kh.closed_form,
        k_hat_gap: kh.gap,
        gamma_argmax: kh.argmax,
        delta,
        g,
        k,
        w,
        ell_star: pts.ell_star,
        ell_1: pts.ell_1,
        ell_2: pts.ell_2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_contract() {
        for (n, p) in [(1e4, 0.3), (1e6, 0.05), (1e5, 0.5), (1e7, 0.02)] {
            let r = solve_k_hat(n, p).unwrap();
            assert!(r.gamma_at_root.abs() <= ROOT_TOL);
            assert!(r.k_hat < r.k_star);
            assert!(r.argmax < r.k_hat);
        }
    }

    #[test]
    fn frozen_roots() {
        let r = solve_k_hat(1e4, 0.3).unwrap();
        assert!((r.k_hat - 52.4356).abs() < 1e-3);
        assert!((r.k_star - 53.5018).abs() < 1e-3);
        let r = solve_k_hat(1e6, 0.05).unwrap();
        assert!((r.k_hat - 462.748).abs() < 1e-3);
        assert!((r.closed_form - 463.455).abs() < 1e-3);
    }

    #[test]
    fn thresholds() {
        let t = g_threshold(1e6, 0.1, 0.0).unwrap();
        assert_eq!(t.value, 237);
        assert!(!t.near_tie);
        assert_eq!(g_threshold(1e6, 0.1, 1.0).unwrap().value, 238);
        let p = 1.0 - (-1f64).exp();
        let t = g_threshold(1000.0, p, 0.25).unwrap();
        assert!((t.raw - (2.0 * (E * 1000.0 * p).ln() + 0.25)).abs() < 1e-12);
        assert!(g_threshold(10.0, 0.1, 0.0).is_err());
        assert!(g_threshold(10.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn bracket_failure_reported() {
        assert!(solve_k_hat(5.0, 0.1).is_err());
    }
}
