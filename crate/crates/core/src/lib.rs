//! Reduced Rejection sampling and the simulation engines built on it.
//!
//! The core idea: sample a value with probability `p(x) / I[p]` using a
//! proposal `q` that does not have to enclose `p`. Where the proposal falls
//! short (the excess region, `p > q`), rejected proposals are replaced by
//! draws from `p - q` instead of being retried, which removes most or all of
//! the rejection cost of classic acceptance-rejection. This pays off when
//! the target has singularities, is sharply peaked, or fluctuates after
//! every sample so that table-based methods cannot amortize their
//! preprocessing.
//!
//! The crate provides:
//!
//! * [`sampler`] — the two core algorithms, an acceptance-rejection
//!   baseline, and an exact path-probability evaluation for small discrete
//!   targets;
//! * [`dynamic`] — a mutable weighted-index structure with a frozen table
//!   proposal, excess-set tracking, and a reinitialization policy;
//! * [`singular`] — a doubly singular mixture density on (0,1) sampled with
//!   zero rejections;
//! * [`kmc`] — a kinetic Monte Carlo engine for pairwise interactions with
//!   singular, fluctuating rates, plus analytic stationary expectations;
//! * [`ssa`] — a Gillespie stochastic simulation engine with pluggable
//!   reaction-selection backends;
//! * [`validation`] — randomized goodness-of-fit and exactness suites used
//!   by the CLI and the acceptance tests.

pub mod dynamic;
pub mod error;
pub mod kmc;
pub mod rng;
pub mod sampler;
pub mod singular;
pub mod stats;
pub mod target;

pub use error::SampleError;
pub use rng::RngStream;
pub use sampler::{
    acceptance_rejection_sample, algorithm_one, algorithm_two, path_probability_oracle,
    reduced_rejection_sample,
};
pub use target::{Branch, ContinuousTarget, DiscreteTarget, SampleRecord, Target};
