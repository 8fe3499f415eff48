//! Error types shared by the sampling kernels.

use thiserror::Error;

/// Failures raised by target construction and the sampling algorithms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    /// The (p, q) pair violates the preconditions of the requested algorithm
    /// or its cached sums disagree with recomputation.
    #[error("malformed target: {0}")]
    MalformedTarget(String),

    /// Total target mass is zero; there is nothing to sample.
    #[error("degenerate target: total p mass is zero")]
    DegenerateTarget,

    /// The proposal does not enclose the target, so plain
    /// acceptance-rejection is not applicable.
    #[error("proposal does not enclose target at index {index}: p={p} > q={q}")]
    NotEnclosing { index: usize, p: f64, q: f64 },

    /// A retry loop exceeded its cycle cap; the target sums are likely
    /// corrupted.
    #[error("sampler did not accept within {cap} cycles")]
    NonTermination { cap: u64 },

    /// The exact path-probability evaluation only supports small supports.
    #[error("target has {n} support points; the exact oracle supports at most {max}")]
    UnsupportedSize { n: usize, max: usize },

    /// Every supplied weight was zero.
    #[error("all weights are zero")]
    AllZeroWeights,

    /// Index outside the weight vector.
    #[error("index {index} out of range for {len} weights")]
    IndexOutOfRange { index: usize, len: usize },

    /// Weights must be non-negative.
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },
}
