//! Statistical helpers: compensated summation, goodness-of-fit tests, and
//! small regression utilities used by the validation suites.

use statrs::function::gamma::gamma_lr;

/// Neumaier-compensated accumulator.
///
/// Used wherever a sum is maintained incrementally across many updates
/// (dynamic weights, observables) so drift stays far below the 1e-9
/// consistency tolerances.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new(value: f64) -> Self {
        Kahan {
            sum: value,
            comp: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum of a slice with Neumaier compensation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Kahan::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Relative difference |a-b| / max(|a|, |b|, 1).
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Outcome of a chi-square test.
#[derive(Debug, Clone, Copy)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// CDF of the chi-squared distribution with `k` degrees of freedom.
pub fn chi_squared_cdf(x: f64, k: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(0.5 * k, 0.5 * x)
    }
}

/// Pearson goodness-of-fit test of observed counts against expected
/// probabilities. Bins with zero probability are excluded from the statistic
/// but force `p_value = 0` if anything was observed there.
pub fn chi_square_gof(observed: &[u64], probabilities: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), probabilities.len());
    let n: u64 = observed.iter().sum();
    let total_prob: f64 = compensated_sum(probabilities.iter().copied());
    let mut stat = 0.0;
    let mut bins = 0usize;
    let mut impossible = false;
    for (&obs, &prob) in observed.iter().zip(probabilities) {
        if prob <= 0.0 {
            if obs > 0 {
                impossible = true;
            }
            continue;
        }
        let expected = n as f64 * prob / total_prob;
        let d = obs as f64 - expected;
        stat += d * d / expected;
        bins += 1;
    }
    let dof = bins.saturating_sub(1);
    let p_value = if impossible {
        0.0
    } else if dof == 0 {
        1.0
    } else {
        1.0 - chi_squared_cdf(stat, dof as f64)
    };
    ChiSquare {
        statistic: stat,
        dof,
        p_value,
    }
}

/// Two-sample chi-square homogeneity test on two count histograms over the
/// same bins. Adjacent bins are pooled until every kept bin has expected
/// count >= 5 in both samples.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> ChiSquare {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    assert!(na > 0 && nb > 0, "two-sample test needs non-empty samples");
    let n = (na + nb) as f64;
    let min_expected = 5.0;

    // pool adjacent bins until expected counts clear the floor
    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let mut acc_a = 0.0;
    let mut acc_b = 0.0;
    for (&oa, &ob) in a.iter().zip(b) {
        acc_a += oa as f64;
        acc_b += ob as f64;
        let pooled_prob = (acc_a + acc_b) / n;
        if pooled_prob * na as f64 >= min_expected && pooled_prob * nb as f64 >= min_expected {
            pooled.push((acc_a, acc_b));
            acc_a = 0.0;
            acc_b = 0.0;
        }
    }
    if acc_a > 0.0 || acc_b > 0.0 {
        if let Some(last) = pooled.last_mut() {
            last.0 += acc_a;
            last.1 += acc_b;
        } else {
            pooled.push((acc_a, acc_b));
        }
    }

    let mut stat = 0.0;
    for &(oa, ob) in &pooled {
        let p = (oa + ob) / n;
        let ea = p * na as f64;
        let eb = p * nb as f64;
        stat += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    let dof = pooled.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        1.0 - chi_squared_cdf(stat, dof as f64)
    };
    ChiSquare {
        statistic: stat,
        dof,
        p_value,
    }
}

/// Kolmogorov-Smirnov statistic of a sample against an analytic CDF.
/// Sorts the sample in place.
pub fn ks_statistic(sample: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!sample.is_empty());
    sample.sort_by(|x, y| x.partial_cmp(y).expect("NaN in KS sample"));
    let n = sample.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sample.iter().enumerate() {
        let f = cdf(x);
        let hi = (i as f64 + 1.0) / n - f;
        let lo = f - i as f64 / n;
        d = d.max(hi).max(lo);
    }
    d
}

/// Sample mean and standard error.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Least-squares slope of y against x.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "slope needs at least two points");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
