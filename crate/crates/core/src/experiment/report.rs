use std::collections::BTreeMap;

use serde::Serialize;

use super::run::TrialRecord;
use crate::error::{Error, Result};
use crate::moments::{g_threshold, log_expected_trees, solve_k_hat, Threshold};

/// Sizes with `E X_k` below this must not be common.
pub const MARKOV_RARE_EXPECTATION: f64 = 1e-6;
/// "Common" means more than this fraction of trials.
pub const MARKOV_FREQUENCY: f64 = 0.01;
/// Sizes with `E X_k` below this must never be reached.
pub const UPPER_TAIL_EXPECTATION: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairWindow {
    pub lo: usize,
    pub hi: usize,
    pub mass: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MarkovLine {
    pub k: usize,
    pub log_expectation: f64,
    pub expectation: f64,
    /// Fraction of trials with size exactly `k`.
    pub frequency: f64,
    /// Fraction of trials with size at least `k`.
    pub tail: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    /// Records counted in the distribution.
    pub used: usize,
    pub lower_bound_only: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub mean: f64,
    pub best_pair: Option<PairWindow>,
    pub delta: f64,
    /// `[g, g+1]` for the configured δ; absent when `np <= 1` or `p = 1`.
    pub threshold: Option<Threshold>,
    pub window_fraction: Option<f64>,
    /// Half-open range `[lo, hi)` of δ for which `{g, g+1}` is the best
    /// consecutive pair; absent with the threshold.
    pub best_fit_delta: Option<(f64, f64)>,
    pub k_hat: Option<f64>,
    /// `E X_k` for every size from 1 to two past the largest observed.
    pub markov: Vec<MarkovLine>,
    /// No size with `E X_k` < 1e-6 has frequency above 1%.
    pub markov_ok: bool,
    /// No size with `E X_k` < 1e-4 is ever reached.
    pub upper_tail_ok: bool,
}

/// Consecutive sizes `{s, s+1}` with the largest combined count, `s`
/// ranging over observed minimum to maximum. Ties go to the smaller `s`.
pub fn best_consecutive_pair(hist: &BTreeMap<usize, usize>) -> Option<PairWindow> {
    let total: usize = hist.values().sum();
    let (&lo, &hi) = (hist.keys().next()?, hist.keys().next_back()?);
    let count = |s: usize| hist.get(&s).copied().unwrap_or(0);
    let mut best: Option<PairWindow> = None;
    for s in lo..=hi {
        let c = count(s) + count(s + 1);
        if best.is_none_or(|b| (c as f64 / total as f64) > b.mass) {
            best = Some(PairWindow {
                lo: s,
                hi: s + 1,
                mass: c as f64 / total as f64,
            });
        }
    }
    best
}

/// Summarizes a batch of records sharing one `(n, p)`. Lower-bound-only
/// records are left out of the distribution unless `include_lower_bounds`.
pub fn concentration_report(
    records: &[TrialRecord],
    delta: f64,
    include_lower_bounds: bool,
) -> Result<ConcentrationReport> {
    let first = records
        .first()
        .ok_or_else(|| Error::Config("no records to summarize".into()))?;
    let (n, p) = (first.n, first.p);
    if let Some(r) = records.iter().find(|r| r.n != n || r.p != p) {
        return Err(Error::MixedBatch(n, p, r.n, r.p));
    }
    let used: Vec<&TrialRecord> = records
        .iter()
        .filter(|r| include_lower_bounds || !r.lower_bound_only())
        .collect();
    let mut histogram = BTreeMap::new();
    for r in &used {
        *histogram.entry(r.size).or_insert(0usize) += 1;
    }
    let total = used.len();
    let mean = if total == 0 {
        f64::NAN
    } else {
        used.iter().map(|r| r.size as f64).sum::<f64>() / total as f64
    };
    let nf = n as f64;
    let interior = p < 1.0 && nf * p > 1.0;
    let threshold = interior.then(|| g_threshold(nf, p, delta)).transpose()?;
    let window_fraction = threshold.filter(|_| total > 0).map(|t| {
        let (a, b) = (t.value, t.value + 1);
        used.iter().filter(|r| (a..=b).contains(&(r.size as i64))).count() as f64 / total as f64
    });
    let best_pair = best_consecutive_pair(&histogram);
    // g(δ) = floor(raw0 + δ) equals s exactly for δ in [s - raw0, s + 1 - raw0).
    let best_fit_delta = threshold.zip(best_pair).map(|(t, w)| {
        let raw0 = t.raw - delta;
        (w.lo as f64 - raw0, w.lo as f64 + 1.0 - raw0)
    });
    let k_hat = if interior {
        solve_k_hat(nf, p).ok().map(|k| k.k_hat)
    } else {
        None
    };
    let mut markov = Vec::new();
    let (mut markov_ok, mut upper_tail_ok) = (true, true);
    if p < 1.0 && total > 0 {
        let top = histogram.keys().next_back().copied().unwrap_or(0);
        for k in 1..=(top + 2).min(n) {
            let le = log_expected_trees(n as u64, p, k as u64)?.ln_abs();
            let freq = histogram.get(&k).copied().unwrap_or(0) as f64 / total as f64;
            let tail = used.iter().filter(|r| r.size >= k).count() as f64 / total as f64;
            if le < MARKOV_RARE_EXPECTATION.ln() && freq > MARKOV_FREQUENCY {
                markov_ok = false;
            }
            if le < UPPER_TAIL_EXPECTATION.ln() && tail > 0.0 {
                upper_tail_ok = false;
            }
            markov.push(MarkovLine {
                k,
                log_expectation: le,
                expectation: le.exp(),
                frequency: freq,
                tail,
            });
        }
    }
    Ok(ConcentrationReport {
        n,
        p,
        trials: records.len(),
        used: total,
        lower_bound_only: records.iter().filter(|r| r.lower_bound_only()).count(),
        best_pair,
        histogram,
        mean,
        delta,
        threshold,
        window_fraction,
        best_fit_delta,
        k_hat,
        markov,
        markov_ok,
        upper_tail_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(n: usize, p: f64, size: usize, optimal: bool) -> TrialRecord {
        TrialRecord {
            n,
            p,
            seed_stream: 0,
            size,
            optimal,
            nodes: 1,
            millis: 0,
        }
    }

    #[test]
    fn single_bar() {
        let rs = vec![rec(5, 1.0, 2, true); 4];
        let r = concentration_report(&rs, 0.0, false).unwrap();
        assert_eq!(r.histogram.len(), 1);
        assert_eq!(r.best_pair, Some(PairWindow { lo: 2, hi: 3, mass: 1.0 }));
        assert!(r.threshold.is_none());
        assert!(r.markov.is_empty());
    }

    #[test]
    fn pair_ties_to_smaller() {
        let h: BTreeMap<usize, usize> = [(3, 2), (4, 1), (5, 2)].into_iter().collect();
        let w = best_consecutive_pair(&h).unwrap();
        assert_eq!((w.lo, w.hi), (3, 4));
        assert!((w.mass - 0.6).abs() < 1e-15);
        assert!(best_consecutive_pair(&BTreeMap::new()).is_none());
    }

    #[test]
    fn rejects_mixed_and_empty() {
        let rs = vec![rec(5, 0.5, 2, true), rec(6, 0.5, 2, true)];
        assert!(matches!(concentration_report(&rs, 0.0, false), Err(Error::MixedBatch(..))));
        assert!(concentration_report(&[], 0.0, false).is_err());
    }

    #[test]
    fn lower_bounds_excluded() {
        let rs = vec![rec(12, 0.5, 5, true), rec(12, 0.5, 3, false)];
        let r = concentration_report(&rs, 0.0, false).unwrap();
        assert_eq!(r.used, 1);
        assert_eq!(r.lower_bound_only, 1);
        let r = concentration_report(&rs, 0.0, true).unwrap();
        assert_eq!(r.used, 2);
    }

    #[test]
    fn best_fit_delta_reproduces_pair() {
        let rs: Vec<_> = [7, 8, 8, 9, 9, 9, 10].iter().map(|&s| rec(16, 0.45, s, true)).collect();
        let r = concentration_report(&rs, 0.3, false).unwrap();
        let (lo, hi) = r.best_fit_delta.unwrap();
        assert!((hi - lo - 1.0).abs() < 1e-12);
        let mid = 0.5 * (lo + hi);
        assert_eq!(g_threshold(16.0, 0.45, mid).unwrap().value, 8);
    }
}
