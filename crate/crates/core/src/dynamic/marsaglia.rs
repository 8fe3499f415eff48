//! Table-method sampler for a frozen discrete distribution.
//!
//! The normalized weight of each index is quantized to four base-256 digit
//! groups (32 bits). Digit `k` of index `i` contributes `d_k` entries to the
//! level-`k` lookup array, each entry carrying integer mass `2^(32-8(k+1))`
//! out of `2^32`. A draw takes one uniform 32-bit word: if it lands inside
//! the quantized mass the entry is read off with shifts, in O(1); the
//! leftover mass below the quantization resolution falls through to a
//! residual list sampled by weighted linear scan.
//!
//! The quantized digits are extracted from `floor(r_i * 2^32)`, which is
//! exact in f64, and each residual `r_i - t_i/2^32` is an exact difference,
//! so table mass plus residual mass reproduces the normalized weights
//! without approximation. Build time is O(n + table size); the table holds
//! at most `255 * 4` entries per index and in practice far fewer.

use crate::error::SampleError;
use crate::rng::RngStream;
use crate::stats::compensated_sum;

const LEVELS: usize = 4;
const DIGIT_BITS: u32 = 8;
const TOTAL_BITS: u32 = 32;
/// Quantization only stays exact while the digit sums cannot overflow the
/// 32-bit budget; 2^21 indices leaves a comfortable margin.
pub const MAX_WEIGHTS: usize = 1 << 21;

/// Frozen-distribution table sampler.
#[derive(Debug, Clone)]
pub struct MarsagliaTable {
    levels: [Vec<u32>; LEVELS],
    /// Cumulative integer mass after each level, out of 2^32.
    cum: [u64; LEVELS],
    /// Quantized integer mass per index (numerator over 2^32).
    mass: Vec<u64>,
    /// (index, leftover probability) pairs below the quantization floor.
    residual: Vec<(u32, f64)>,
    residual_total: f64,
}

impl MarsagliaTable {
    /// Build a table over non-negative weights.
    pub fn build(weights: &[f64]) -> Result<Self, SampleError> {
        assert!(
            weights.len() <= MAX_WEIGHTS,
            "table supports at most {MAX_WEIGHTS} weights"
        );
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(SampleError::NegativeWeight { index: i, value: w });
            }
        }
        let total = compensated_sum(weights.iter().copied());
        if total <= 0.0 {
            return Err(SampleError::AllZeroWeights);
        }

        let scale = (1u64 << TOTAL_BITS) as f64;
        let mut levels: [Vec<u32>; LEVELS] = Default::default();
        let mut mass = Vec::with_capacity(weights.len());
        let mut residual = Vec::new();
        for (i, &w) in weights.iter().enumerate() {
            let r = w / total;
            // r * 2^32 is an exact scaling; floor gives the quantized mass.
            // A ratio of exactly 1 would need a 33rd bit, so its last ulp is
            // carried by the residual instead.
            let t = ((r * scale).floor() as u64).min((1u64 << TOTAL_BITS) - 1);
            mass.push(t);
            for (k, level) in levels.iter_mut().enumerate() {
                let shift = TOTAL_BITS - DIGIT_BITS * (k as u32 + 1);
                let digit = ((t >> shift) & 0xFF) as usize;
                for _ in 0..digit {
                    level.push(i as u32);
                }
            }
            // exact: both operands are multiples of ulp(r)
            let rem = r - t as f64 / scale;
            if rem > 0.0 {
                residual.push((i as u32, rem));
            }
        }

        let mut cum = [0u64; LEVELS];
        let mut acc = 0u64;
        for (k, level) in levels.iter().enumerate() {
            let shift = TOTAL_BITS - DIGIT_BITS * (k as u32 + 1);
            acc += (level.len() as u64) << shift;
            cum[k] = acc;
        }
        debug_assert!(acc <= 1 << TOTAL_BITS);

        let residual_total = compensated_sum(residual.iter().map(|&(_, r)| r));
        Ok(MarsagliaTable {
            levels,
            cum,
            mass,
            residual,
            residual_total,
        })
    }

    /// Draw an index with probability proportional to the build weights.
    pub fn sample(&self, rng: &mut RngStream) -> usize {
        let w = rng.next_u32() as u64;
        let mut base = 0u64;
        for (k, level) in self.levels.iter().enumerate() {
            if w < self.cum[k] {
                let shift = TOTAL_BITS - DIGIT_BITS * (k as u32 + 1);
                let entry = ((w - base) >> shift) as usize;
                return level[entry] as usize;
            }
            base = self.cum[k];
        }
        self.sample_residual(rng)
    }

    fn sample_residual(&self, rng: &mut RngStream) -> usize {
        debug_assert!(
            !self.residual.is_empty(),
            "uniform word beyond table mass with empty residual"
        );
        let mut target = rng.uniform() * self.residual_total;
        let mut last = self.residual[0].0;
        for &(i, r) in &self.residual {
            last = i;
            if target < r {
                return i as usize;
            }
            target -= r;
        }
        last as usize
    }

    /// Exact probability of each index under the sampling procedure:
    /// quantized mass plus the fall-through share of its residual. Used by
    /// the accounting tests to show the table reproduces the normalized
    /// weights.
    pub fn outcome_probabilities(&self) -> Vec<f64> {
        let table_mass = self.cum[LEVELS - 1];
        let fallthrough = ((1u64 << TOTAL_BITS) - table_mass) as f64 / (1u64 << TOTAL_BITS) as f64;
        let mut probs: Vec<f64> = self
            .mass
            .iter()
            .map(|&t| t as f64 / (1u64 << TOTAL_BITS) as f64)
            .collect();
        if self.residual_total > 0.0 {
            for &(i, r) in &self.residual {
                probs[i as usize] += fallthrough * r / self.residual_total;
            }
        }
        probs
    }

    /// Total number of lookup entries across all levels.
    pub fn entry_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}
