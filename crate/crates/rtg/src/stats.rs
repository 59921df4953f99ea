//! Exact (Clopper-Pearson) binomial confidence intervals, computed by
//! bisection on log-space binomial tail sums. Small-count safe.

/// Two-sided Clopper-Pearson interval for `successes` out of `trials`
/// at the given confidence level (e.g. 0.95).
pub fn clopper_pearson(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(trials >= 1, "need at least one trial");
    assert!(successes <= trials);
    assert!((0.0..1.0).contains(&confidence) && confidence > 0.0);
    let alpha = 1.0 - confidence;
    let half = alpha / 2.0;
    let lower = if successes == 0 {
        0.0
    } else {
        // largest p with P(X >= x | p) <= half, i.e.
        // P(X <= x-1 | p) >= 1 - half; the tail is decreasing in p
        bisect(|p| binom_cdf(trials, successes - 1, p) - (1.0 - half))
    };
    let upper = if successes == trials {
        1.0
    } else {
        // smallest p with P(X <= x | p) <= half
        bisect(|p| binom_cdf(trials, successes, p) - half)
    };
    (lower, upper)
}

/// Finds the root of a decreasing function of `p` on [0, 1].
fn bisect(f: impl Fn(f64) -> f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `P(X <= x)` for `X ~ Bin(n, p)`, summed in log space.
fn binom_cdf(n: u64, x: u64, p: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if x >= n { 1.0 } else { 0.0 };
    }
    let lp = p.ln();
    let lq = (1.0 - p).ln();
    // log term at i = log C(n,i) + i log p + (n-i) log q, built
    // incrementally; accumulate with a running log-sum-exp
    let mut log_term = (n as f64) * lq;
    let mut log_sum = log_term;
    for i in 0..x {
        log_term += ((n - i) as f64).ln() - ((i + 1) as f64).ln() + lp - lq;
        log_sum = log_add(log_sum, log_term);
    }
    log_sum.exp().min(1.0)
}

fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct-sum oracle, no logs: fine for small n.
    fn cdf_oracle(n: u64, x: u64, p: f64) -> f64 {
        let mut total = 0.0;
        for i in 0..=x.min(n) {
            let mut term = 1.0;
            for j in 0..i {
                term *= (n - j) as f64 / (j + 1) as f64;
            }
            term *= p.powi(i as i32) * (1.0 - p).powi((n - i) as i32);
            total += term;
        }
        total
    }

    #[test]
    fn cdf_matches_direct_sums() {
        for &(n, x, p) in &[(10u64, 3u64, 0.3f64), (20, 0, 0.05), (50, 25, 0.5), (30, 29, 0.9)] {
            assert!((binom_cdf(n, x, p) - cdf_oracle(n, x, p)).abs() < 1e-10);
        }
    }

    #[test]
    fn textbook_interval() {
        // 3 successes in 10 trials, 95%: the classic worked example
        let (lo, hi) = clopper_pearson(3, 10, 0.95);
        assert!((lo - 0.06674).abs() < 5e-4, "{lo}");
        assert!((hi - 0.65245).abs() < 5e-4, "{hi}");
        // verify against the defining equations with the direct oracle
        assert!((1.0 - cdf_oracle(10, 2, lo) - 0.025).abs() < 1e-6);
        assert!((cdf_oracle(10, 3, hi) - 0.025).abs() < 1e-6);
    }

    #[test]
    fn edge_counts() {
        let (lo, hi) = clopper_pearson(0, 20, 0.95);
        assert_eq!(lo, 0.0);
        // upper solves (1-p)^20 = 0.025
        assert!((hi - (1.0 - 0.025f64.powf(1.0 / 20.0))).abs() < 1e-9);
        let (lo, hi) = clopper_pearson(20, 20, 0.95);
        assert_eq!(hi, 1.0);
        assert!((lo - 0.025f64.powf(1.0 / 20.0)).abs() < 1e-9);
    }

    #[test]
    fn interval_contains_the_estimate() {
        for x in 0..=25u64 {
            let (lo, hi) = clopper_pearson(x, 25, 0.95);
            let est = x as f64 / 25.0;
            assert!(lo <= est && est <= hi);
        }
    }
}
