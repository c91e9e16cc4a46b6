//! Exact binomial probabilities, evaluated in log space.

use statrs::function::factorial::ln_binomial;

/// `ln P(Binom(trials, q) = k)`.
pub fn ln_pmf(trials: u64, q: f64, k: u64) -> f64 {
    if k > trials {
        return f64::NEG_INFINITY;
    }
    // 0 * ln(0) is taken as 0.
    let term = |count: u64, p: f64| if count == 0 { 0.0 } else { count as f64 * p.ln() };
    ln_binomial(trials, k) + term(k, q) + term(trials - k, 1.0 - q)
}

pub fn pmf(trials: u64, q: f64, k: u64) -> f64 {
    ln_pmf(trials, q, k).exp()
}

/// Exact `P(Binom(trials, q) >= k)`.
pub fn binomial_upper_tail(trials: u64, q: f64, k: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > trials {
        return 0.0;
    }
    let logs: Vec<f64> = (k..=trials).map(|j| ln_pmf(trials, q, j)).collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return 0.0;
    }
    let sum: f64 = logs.iter().map(|l| (l - max).exp()).sum();
    (max + sum.ln()).exp().clamp(0.0, 1.0)
}

/// Smallest `k` in `0..=n` with `P(Binom(n - 1, q) >= k) <= alpha`, i.e. the
/// `(1 - alpha)`-quantile of a vertex degree in `G(n, q)`.
pub fn tau_threshold(n: usize, q: f64, alpha: f64) -> usize {
    let trials = n.saturating_sub(1) as u64;
    // The tail is nonincreasing in k and vanishes at k = n.
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if binomial_upper_tail(trials, q, mid as u64) <= alpha {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}
