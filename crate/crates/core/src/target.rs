//! Target/proposal pairs and the record each sample carries.
//!
//! A target bundles the unnormalized function `p` to sample from, the
//! proposal `q` used to propose values, the three masses the algorithms need
//! (`I[p]`, `I[q]`, and the excess mass over the region where `p > q`), and
//! the two draw mechanisms: proposing from `q` over the whole space and
//! drawing from `p - q` over the excess region.

use crate::error::SampleError;
use crate::rng::RngStream;
use crate::stats::{compensated_sum, rel_diff};

/// Which step of the sampling algorithm produced (or rejected) a value.
///
/// `Excess` here is the region where `p > q`; `Enclosed` is its complement
/// where the proposal dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Taken directly from the excess distribution before any proposal.
    ExcessDirect,
    /// Proposal landed in the excess region and was accepted outright.
    QAcceptExcess,
    /// Proposal landed in the enclosed region and survived the p/q coin.
    QAcceptEnclosed,
    /// Proposal was rejected and replaced by an excess draw.
    ReplacedByExcess,
    /// Proposal was rejected and the cycle restarted (Algorithm II only);
    /// never appears on a returned record, where retries show up in
    /// `proposals_used`.
    CycleRetry,
}

impl Branch {
    /// Stable small index, handy for branch histograms.
    pub fn index(self) -> usize {
        match self {
            Branch::ExcessDirect => 0,
            Branch::QAcceptExcess => 1,
            Branch::QAcceptEnclosed => 2,
            Branch::ReplacedByExcess => 3,
            Branch::CycleRetry => 4,
        }
    }

    /// Number of distinct branch tags.
    pub const COUNT: usize = 5;
}

/// A sampled value plus the diagnostics of how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRecord<V> {
    pub value: V,
    pub branch: Branch,
    /// Number of q-proposals consumed.
    pub proposals_used: u32,
    /// Number of excess-distribution draws consumed.
    pub excess_draws: u32,
}

/// Anything the Reduced Rejection algorithms can sample from.
pub trait Target {
    type Value: Clone;

    /// Total mass of `p`.
    fn total_p(&self) -> f64;
    /// Total mass of the proposal `q`.
    fn total_q(&self) -> f64;
    /// Mass of `p - q` over the excess region.
    fn excess_total(&self) -> f64;

    /// Draw a value from the whole space with density/mass proportional to `q`.
    fn draw_q(&self, rng: &mut RngStream) -> Self::Value;
    /// Draw a value from the excess region proportional to `p - q`.
    fn draw_excess(&self, rng: &mut RngStream) -> Self::Value;
    /// Whether a value lies in the excess region (`p > q`).
    fn is_excess(&self, value: &Self::Value) -> bool;
    /// The acceptance ratio `p(value) / q(value)` for enclosed values.
    fn acceptance_ratio(&self, value: &Self::Value) -> f64;
}

/// Discrete target over indices `0..n` with explicit weight vectors.
///
/// Proposal draws and excess draws use cumulative-scan inversion; this type
/// is meant for moderate supports and for exact-oracle work. The dynamic
/// table-backed structure in [`crate::dynamic`] covers the large mutable
/// case.
#[derive(Debug, Clone)]
pub struct DiscreteTarget {
    p: Vec<f64>,
    q: Vec<f64>,
    total_p: f64,
    total_q: f64,
    excess_total: f64,
    /// Region tag per index: true when p_i > q_i.
    excess: Vec<bool>,
}

/// Sums supplied by a caller, validated against recomputation.
#[derive(Debug, Clone, Copy)]
pub struct CachedTotals {
    pub total_p: f64,
    pub total_q: f64,
    pub excess_total: f64,
}

const SUM_TOLERANCE: f64 = 1e-9;

impl DiscreteTarget {
    /// Build a target from weight vectors, recomputing all sums with
    /// compensated summation.
    pub fn new(p: Vec<f64>, q: Vec<f64>) -> Result<Self, SampleError> {
        if p.len() != q.len() {
            return Err(SampleError::MalformedTarget(format!(
                "p has {} weights but q has {}",
                p.len(),
                q.len()
            )));
        }
        for weights in [&p, &q] {
            for (i, &w) in weights.iter().enumerate() {
                if !w.is_finite() || w < 0.0 {
                    return Err(SampleError::NegativeWeight { index: i, value: w });
                }
            }
        }
        let total_p = compensated_sum(p.iter().copied());
        let total_q = compensated_sum(q.iter().copied());
        if total_p <= 0.0 {
            return Err(SampleError::DegenerateTarget);
        }
        let excess: Vec<bool> = p.iter().zip(&q).map(|(&pi, &qi)| pi > qi).collect();
        let excess_total = compensated_sum(
            p.iter()
                .zip(&q)
                .filter(|(pi, qi)| pi > qi)
                .map(|(pi, qi)| pi - qi),
        );
        Ok(DiscreteTarget {
            p,
            q,
            total_p,
            total_q,
            excess_total,
            excess,
        })
    }

    /// Build with caller-supplied sums, validated against recomputation at
    /// 1e-9 relative tolerance.
    pub fn with_totals(
        p: Vec<f64>,
        q: Vec<f64>,
        totals: CachedTotals,
    ) -> Result<Self, SampleError> {
        let target = Self::new(p, q)?;
        for (name, cached, exact) in [
            ("total_p", totals.total_p, target.total_p),
            ("total_q", totals.total_q, target.total_q),
            ("excess_total", totals.excess_total, target.excess_total),
        ] {
            if rel_diff(cached, exact) > SUM_TOLERANCE {
                return Err(SampleError::MalformedTarget(format!(
                    "cached {name}={cached} disagrees with recomputed {exact}"
                )));
            }
        }
        Ok(target)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// Indices currently in the excess region.
    pub fn excess_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.excess
            .iter()
            .enumerate()
            .filter_map(|(i, &e)| e.then_some(i))
    }

    /// Normalized target probability of an index.
    pub fn probability(&self, i: usize) -> f64 {
        self.p[i] / self.total_p
    }

    fn scan(&self, rng: &mut RngStream, total: f64, weight: impl Fn(usize) -> f64) -> usize {
        let mut target = rng.uniform() * total;
        let mut last_positive = 0;
        for i in 0..self.p.len() {
            let w = weight(i);
            if w <= 0.0 {
                continue;
            }
            last_positive = i;
            if target < w {
                return i;
            }
            target -= w;
        }
        // target fell off the end through rounding; the last positive-weight
        // index owns the residual sliver
        last_positive
    }
}

impl Target for DiscreteTarget {
    type Value = usize;

    fn total_p(&self) -> f64 {
        self.total_p
    }

    fn total_q(&self) -> f64 {
        self.total_q
    }

    fn excess_total(&self) -> f64 {
        self.excess_total
    }

    fn draw_q(&self, rng: &mut RngStream) -> usize {
        debug_assert!(self.total_q > 0.0, "q-draw from zero-mass proposal");
        self.scan(rng, self.total_q, |i| self.q[i])
    }

    fn draw_excess(&self, rng: &mut RngStream) -> usize {
        debug_assert!(self.excess_total > 0.0, "excess draw from empty region");
        self.scan(rng, self.excess_total, |i| {
            if self.excess[i] {
                self.p[i] - self.q[i]
            } else {
                0.0
            }
        })
    }

    fn is_excess(&self, value: &usize) -> bool {
        self.excess[*value]
    }

    fn acceptance_ratio(&self, value: &usize) -> f64 {
        let i = *value;
        debug_assert!(!self.excess[i]);
        if self.q[i] <= 0.0 {
            // only reachable for zero-mass indices, which q never proposes
            0.0
        } else {
            self.p[i] / self.q[i]
        }
    }
}

/// Function sampler: draws a value from the space or a region of it.
pub type DrawFn = Box<dyn Fn(&mut RngStream) -> f64 + Send + Sync>;
/// Pointwise evaluation of an unnormalized density.
pub type DensityFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Continuous target on a real interval.
///
/// The caller supplies the densities, their integrals, and the two draw
/// mechanisms; the invariants (that `sample_q` really has density `q / I[q]`,
/// and that excess draws land where `p > q`) are statistical properties
/// checked by the validation suites.
pub struct ContinuousTarget {
    eval_p: DensityFn,
    eval_q: DensityFn,
    total_p: f64,
    total_q: f64,
    excess_total: f64,
    sample_q: DrawFn,
    sample_excess: DrawFn,
}

impl ContinuousTarget {
    pub fn new(
        eval_p: DensityFn,
        eval_q: DensityFn,
        total_p: f64,
        total_q: f64,
        excess_total: f64,
        sample_q: DrawFn,
        sample_excess: DrawFn,
    ) -> Result<Self, SampleError> {
        if !(total_p > 0.0) {
            return Err(SampleError::DegenerateTarget);
        }
        if !(total_q >= 0.0) || !(excess_total >= 0.0) {
            return Err(SampleError::MalformedTarget(
                "masses must be non-negative".into(),
            ));
        }
        Ok(ContinuousTarget {
            eval_p,
            eval_q,
            total_p,
            total_q,
            excess_total,
            sample_q,
            sample_excess,
        })
    }

    pub fn density_p(&self, x: f64) -> f64 {
        (self.eval_p)(x)
    }

    pub fn density_q(&self, x: f64) -> f64 {
        (self.eval_q)(x)
    }
}

impl Target for ContinuousTarget {
    type Value = f64;

    fn total_p(&self) -> f64 {
        self.total_p
    }

    fn total_q(&self) -> f64 {
        self.total_q
    }

    fn excess_total(&self) -> f64 {
        self.excess_total
    }

    fn draw_q(&self, rng: &mut RngStream) -> f64 {
        (self.sample_q)(rng)
    }

    fn draw_excess(&self, rng: &mut RngStream) -> f64 {
        (self.sample_excess)(rng)
    }

    fn is_excess(&self, value: &f64) -> bool {
        (self.eval_p)(*value) > (self.eval_q)(*value)
    }

    fn acceptance_ratio(&self, value: &f64) -> f64 {
        let q = (self.eval_q)(*value);
        if q <= 0.0 {
            0.0
        } else {
            (self.eval_p)(*value) / q
        }
    }
}
