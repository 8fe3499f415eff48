//! The two Reduced Rejection algorithms, the classic acceptance-rejection
//! baseline, and an exact path-probability evaluation for small discrete
//! targets.
//!
//! Both algorithms sample a value `z` with probability `p(z) / I[p]` from a
//! target/proposal pair without requiring the proposal to enclose the
//! target. Which algorithm applies depends on the relative masses:
//!
//! * Algorithm I (`I[p] >= I[q]`) never retries: a rejected proposal is
//!   replaced by a draw from the excess distribution, so at most one
//!   proposal and one excess draw are ever consumed.
//! * Algorithm II (`I[p] < I[q]`) retries like acceptance-rejection, but a
//!   rejected proposal is first given a chance to be replaced by an excess
//!   draw, which is what makes a non-enclosing (smaller-mass) proposal
//!   usable at all.
//!
//! When the proposal encloses the target the excess region is empty and
//! Algorithm II degenerates to plain acceptance-rejection, provided here as
//! [`acceptance_rejection_sample`] for baseline comparisons.

use crate::error::SampleError;
use crate::rng::RngStream;
use crate::target::{Branch, DiscreteTarget, SampleRecord, Target};

/// Retry guard for the looping samplers; a healthy target accepts within a
/// handful of cycles, so hitting this means the sums are corrupted.
pub const DEFAULT_CYCLE_CAP: u64 = 1_000_000;

fn check_consistent<T: Target>(target: &T) -> Result<(), SampleError> {
    if target.total_p() <= 0.0 {
        return Err(SampleError::DegenerateTarget);
    }
    Ok(())
}

/// Algorithm for the `I[p] >= I[q]` regime. Consumes at most one proposal
/// and at most one excess draw.
pub fn algorithm_one<T: Target>(
    target: &T,
    rng: &mut RngStream,
) -> Result<SampleRecord<T::Value>, SampleError> {
    check_consistent(target)?;
    let total_p = target.total_p();
    let total_q = target.total_q();
    if total_p < total_q {
        return Err(SampleError::MalformedTarget(format!(
            "algorithm I needs I[p] >= I[q], got I[p]={total_p} < I[q]={total_q}"
        )));
    }

    // (i) with probability (I[p]-I[q])/I[p], return an excess draw outright.
    // The excess guard only matters when rounding drift leaves a sliver of
    // direct probability on an empty excess region.
    let direct = (total_p - total_q) / total_p;
    if target.excess_total() > 0.0 && rng.uniform() < direct {
        return Ok(SampleRecord {
            value: target.draw_excess(rng),
            branch: Branch::ExcessDirect,
            proposals_used: 0,
            excess_draws: 1,
        });
    }

    // (ii) propose from q
    let x = target.draw_q(rng);
    if target.is_excess(&x) {
        return Ok(SampleRecord {
            value: x,
            branch: Branch::QAcceptExcess,
            proposals_used: 1,
            excess_draws: 0,
        });
    }
    if rng.uniform() < target.acceptance_ratio(&x) {
        return Ok(SampleRecord {
            value: x,
            branch: Branch::QAcceptEnclosed,
            proposals_used: 1,
            excess_draws: 0,
        });
    }

    // (iii) rejected: replace with an excess draw
    Ok(SampleRecord {
        value: target.draw_excess(rng),
        branch: Branch::ReplacedByExcess,
        proposals_used: 1,
        excess_draws: 1,
    })
}

/// Algorithm for the `I[p] < I[q]` regime (also valid at equality, where it
/// coincides with Algorithm I). Uses the default cycle cap.
pub fn algorithm_two<T: Target>(
    target: &T,
    rng: &mut RngStream,
) -> Result<SampleRecord<T::Value>, SampleError> {
    algorithm_two_with_cap(target, rng, DEFAULT_CYCLE_CAP)
}

/// [`algorithm_two`] with an explicit cycle cap.
pub fn algorithm_two_with_cap<T: Target>(
    target: &T,
    rng: &mut RngStream,
    cap: u64,
) -> Result<SampleRecord<T::Value>, SampleError> {
    check_consistent(target)?;
    let total_p = target.total_p();
    let total_q = target.total_q();
    if total_p > total_q {
        return Err(SampleError::MalformedTarget(format!(
            "algorithm II needs I[p] <= I[q], got I[p]={total_p} > I[q]={total_q}"
        )));
    }
    if total_q <= 0.0 {
        return Err(SampleError::MalformedTarget(
            "algorithm II needs a positive-mass proposal".into(),
        ));
    }
    let excess = target.excess_total();
    // probability that a rejected proposal is replaced by an excess draw
    let replace_prob = if excess > 0.0 {
        excess / (total_q - total_p + excess)
    } else {
        0.0
    };

    let mut proposals = 0u32;
    let mut excess_draws = 0u32;
    for _ in 0..cap {
        // (i) propose from q
        let x = target.draw_q(rng);
        proposals += 1;
        // (ii) excess region accepts outright
        if target.is_excess(&x) {
            return Ok(SampleRecord {
                value: x,
                branch: Branch::QAcceptExcess,
                proposals_used: proposals,
                excess_draws,
            });
        }
        // (iii) enclosed region accepts with probability p/q
        if rng.uniform() < target.acceptance_ratio(&x) {
            return Ok(SampleRecord {
                value: x,
                branch: Branch::QAcceptEnclosed,
                proposals_used: proposals,
                excess_draws,
            });
        }
        // (iv.a) replace the rejection with an excess draw...
        if excess > 0.0 && rng.uniform() < replace_prob {
            excess_draws += 1;
            return Ok(SampleRecord {
                value: target.draw_excess(rng),
                branch: Branch::ReplacedByExcess,
                proposals_used: proposals,
                excess_draws,
            });
        }
        // (iv.b) ...or start the cycle over
    }
    Err(SampleError::NonTermination { cap })
}

/// Dispatch on the relative masses: Algorithm I when `I[p] >= I[q]`, else
/// Algorithm II.
pub fn reduced_rejection_sample<T: Target>(
    target: &T,
    rng: &mut RngStream,
) -> Result<SampleRecord<T::Value>, SampleError> {
    if target.total_p() >= target.total_q() {
        algorithm_one(target, rng)
    } else {
        algorithm_two(target, rng)
    }
}

/// Classic acceptance-rejection with an enclosing proposal, for baselines.
/// Requires `p <= q` pointwise (empty excess region).
pub fn acceptance_rejection_sample<T: Target>(
    target: &T,
    rng: &mut RngStream,
) -> Result<SampleRecord<T::Value>, SampleError> {
    acceptance_rejection_with_cap(target, rng, DEFAULT_CYCLE_CAP)
}

/// [`acceptance_rejection_sample`] with an explicit cycle cap.
pub fn acceptance_rejection_with_cap<T: Target>(
    target: &T,
    rng: &mut RngStream,
    cap: u64,
) -> Result<SampleRecord<T::Value>, SampleError> {
    check_consistent(target)?;
    if target.total_q() <= 0.0 {
        return Err(SampleError::MalformedTarget(
            "acceptance-rejection needs a positive-mass proposal".into(),
        ));
    }
    if target.excess_total() > 0.0 {
        return Err(SampleError::MalformedTarget(
            "proposal does not enclose target (excess mass present)".into(),
        ));
    }
    let mut proposals = 0u32;
    for _ in 0..cap {
        let x = target.draw_q(rng);
        proposals += 1;
        if target.is_excess(&x) {
            // p > q at a proposed point contradicts enclosure
            return Err(SampleError::MalformedTarget(
                "proposal does not enclose target at a proposed value".into(),
            ));
        }
        if rng.uniform() < target.acceptance_ratio(&x) {
            return Ok(SampleRecord {
                value: x,
                branch: Branch::QAcceptEnclosed,
                proposals_used: proposals,
                excess_draws: 0,
            });
        }
    }
    Err(SampleError::NonTermination { cap })
}

/// Check that a discrete proposal encloses its target, as the
/// acceptance-rejection baseline requires.
pub fn check_enclosing(target: &DiscreteTarget) -> Result<(), SampleError> {
    for (i, (&pi, &qi)) in target.p().iter().zip(target.q()).enumerate() {
        if pi > qi {
            return Err(SampleError::NotEnclosing { index: i, p: pi, q: qi });
        }
    }
    Ok(())
}

/// Largest support the exact oracle evaluates.
pub const ORACLE_MAX_SUPPORT: usize = 64;

/// Exact return probability of index `z` under whichever algorithm the
/// dispatch selects, evaluated branch by branch from the per-step
/// probabilities rather than from the closed-form answer.
///
/// For the `I[p] >= I[q]` regime the value of an excess index is the sum of
/// the direct, proposal-accept, and replacement paths; for an enclosed index
/// it is the propose-then-accept path. For `I[p] < I[q]` the per-cycle
/// branch probabilities are summed and divided by the per-cycle acceptance
/// probability `I[p]/I[q]` (the geometric-series total). In both regimes the
/// result must equal `p_z / I[p]`, which is what the validation suites
/// check.
pub fn path_probability_oracle(target: &DiscreteTarget, z: usize) -> Result<f64, SampleError> {
    let n = target.len();
    if n > ORACLE_MAX_SUPPORT {
        return Err(SampleError::UnsupportedSize {
            n,
            max: ORACLE_MAX_SUPPORT,
        });
    }
    if z >= n {
        return Err(SampleError::IndexOutOfRange { index: z, len: n });
    }
    let total_p = target.total_p();
    let total_q = target.total_q();
    let excess = target.excess_total();
    let p_z = target.p()[z];
    let q_z = target.q()[z];
    // mass the proposal wastes on the enclosed region
    let enclosed_deficit: f64 = crate::stats::compensated_sum(
        target
            .p()
            .iter()
            .zip(target.q())
            .filter(|(pi, qi)| pi <= qi)
            .map(|(pi, qi)| qi - pi),
    );

    let prob = if total_p >= total_q {
        if target.is_excess(&z) {
            // direct draw + proposal landing in excess + replacement draw
            let direct = (total_p - total_q) / total_p * ((p_z - q_z) / excess);
            let via_q = q_z / total_p;
            let replaced = enclosed_deficit / total_p * ((p_z - q_z) / excess);
            direct + via_q + replaced
        } else if q_z > 0.0 {
            // propose z, then survive the p/q coin
            (total_q / total_p) * (q_z / total_q) * (p_z / q_z)
        } else {
            0.0
        }
    } else {
        // per-cycle probability of returning z, then renormalize by the
        // per-cycle acceptance probability I[p]/I[q]
        let per_cycle = if target.is_excess(&z) {
            let replace_prob = excess / (total_q - total_p + excess);
            q_z / total_q + (enclosed_deficit / total_q) * replace_prob * ((p_z - q_z) / excess)
        } else if q_z > 0.0 {
            (q_z / total_q) * (p_z / q_z)
        } else {
            0.0
        };
        per_cycle / (total_p / total_q)
    };
    Ok(prob)
}
