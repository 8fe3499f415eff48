//! Walker/Vose alias table: O(n) build, O(1) draw.
//!
//! Kept alongside the digit-group table as an interchangeable proposal
//! backend and as an independent cross-check in the goodness-of-fit suites.

use crate::error::SampleError;
use crate::rng::RngStream;
use crate::stats::compensated_sum;

#[derive(Debug, Clone)]
pub struct AliasTable {
    /// Acceptance threshold per column, scaled to [0, 1].
    prob: Vec<f64>,
    alias: Vec<u32>,
}

impl AliasTable {
    pub fn build(weights: &[f64]) -> Result<Self, SampleError> {
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(SampleError::NegativeWeight { index: i, value: w });
            }
        }
        let total = compensated_sum(weights.iter().copied());
        if total <= 0.0 {
            return Err(SampleError::AllZeroWeights);
        }
        let n = weights.len();
        let mut prob = vec![0.0f64; n];
        let mut alias: Vec<u32> = (0..n as u32).collect();

        let mut scaled: Vec<f64> = weights.iter().map(|&w| w * n as f64 / total).collect();
        let mut small: Vec<u32> = Vec::new();
        let mut large: Vec<u32> = Vec::new();
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i as u32);
            } else {
                large.push(i as u32);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s as usize] = scaled[s as usize];
            alias[s as usize] = l;
            scaled[l as usize] -= 1.0 - scaled[s as usize];
            if scaled[l as usize] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        // leftovers are all (up to rounding) exactly 1
        for &i in small.iter().chain(large.iter()) {
            prob[i as usize] = 1.0;
        }
        Ok(AliasTable { prob, alias })
    }

    pub fn sample(&self, rng: &mut RngStream) -> usize {
        let j = rng.index_below(self.prob.len());
        if rng.uniform() < self.prob[j] {
            j
        } else {
            self.alias[j] as usize
        }
    }

    /// Probability of each index implied by the table structure, for the
    /// accounting tests.
    pub fn outcome_probabilities(&self) -> Vec<f64> {
        let n = self.prob.len();
        let mut probs = vec![0.0f64; n];
        for j in 0..n {
            probs[j] += self.prob[j] / n as f64;
            probs[self.alias[j] as usize] += (1.0 - self.prob[j]) / n as f64;
        }
        probs
    }
}
