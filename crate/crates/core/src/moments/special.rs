//! Log-factorials, log-binomials and compensated sums.

use statrs::function::gamma::ln_gamma;

/// Below this the binomial is summed term by term instead of via log-gamma.
const DIRECT_TERMS: u64 = 4096;

/// Neumaier compensated summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub fn ln_factorial(m: u64) -> f64 {
    if m <= DIRECT_TERMS {
        neumaier_sum((2..=m).map(|i| (i as f64).ln()))
    } else {
        ln_gamma(m as f64 + 1.0)
    }
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let m = k.min(n - k);
    if m <= DIRECT_TERMS {
        // ln(n - i) = ln n + ln(1 - i/n) keeps each term accurate for huge n.
        let nf = n as f64;
        let head = neumaier_sum((0..m).map(|i| (-(i as f64) / nf).ln_1p()));
        head + m as f64 * nf.ln() - ln_factorial(m)
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// `ln C(a, b)` for real `0 <= b <= a` via log-gamma.
pub fn ln_choose_real(a: f64, b: f64) -> f64 {
    ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0)
}

/// `C(m, 2)` as a float.
pub fn pairs(m: f64) -> f64 {
    m * (m - 1.0) / 2.0
}
