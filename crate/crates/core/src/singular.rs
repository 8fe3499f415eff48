//! Sampling the doubly singular density `p(x) = 1/sqrt(x) + 1/(1-x)^(1/5)`
//! on (0,1).
//!
//! Direct inverse-transform sampling of `p` would require inverting an
//! eighth-degree polynomial. Instead the first term serves as the proposal:
//! `q(x) = 1/sqrt(x)` with mass 2, leaving `p - q = (1-x)^(-1/5)` with mass
//! 5/4 as the excess density over the whole interval. Both pieces invert in
//! closed form, and because `p > q` everywhere, every proposal is accepted —
//! the sampler produces no rejected points at all.
//!
//! The same construction works for any density that splits into a sum of
//! exactly sampleable components with known masses; [`ComponentMixture`]
//! exposes that general form.

use crate::error::SampleError;
use crate::rng::RngStream;
use crate::sampler::algorithm_one;
use crate::target::{ContinuousTarget, DrawFn, SampleRecord};

/// Mass of the proposal component: integral of 1/sqrt(x) over (0,1).
pub const INV_SQRT_MASS: f64 = 2.0;
/// Mass of the excess component: integral of (1-x)^(-1/5) over (0,1).
pub const QUINTIC_MASS: f64 = 1.25;
/// Total target mass.
pub const MIXTURE_MASS: f64 = INV_SQRT_MASS + QUINTIC_MASS;

#[inline]
fn inv_sqrt_transform(u: f64) -> f64 {
    u * u
}

#[inline]
fn quintic_transform(u: f64) -> f64 {
    1.0 - (1.0 - u).powf(1.25)
}

fn draw_open(rng: &mut RngStream, transform: impl Fn(f64) -> f64) -> f64 {
    // redraw anything the transform maps onto a singular endpoint
    loop {
        let x = transform(rng.open_unit());
        if x > 0.0 && x < 1.0 {
            return x;
        }
    }
}

/// Draw from density `(1/sqrt(x)) / 2` by inverse transform: `x = u^2`.
pub fn sample_inv_sqrt(rng: &mut RngStream) -> f64 {
    draw_open(rng, inv_sqrt_transform)
}

/// Draw from density `(1-x)^(-1/5) / (5/4)` by inverse transform:
/// `x = 1 - (1-u)^(5/4)`.
pub fn sample_excess_quintic(rng: &mut RngStream) -> f64 {
    draw_open(rng, quintic_transform)
}

/// CDF of the normalized inverse-square-root component.
pub fn inv_sqrt_cdf(x: f64) -> f64 {
    x.clamp(0.0, 1.0).sqrt()
}

/// CDF of the normalized quintic excess component.
pub fn quintic_cdf(x: f64) -> f64 {
    1.0 - (1.0 - x.clamp(0.0, 1.0)).powf(0.8)
}

/// The doubly singular mixture target.
pub struct SingularMixture {
    target: ContinuousTarget,
}

impl Default for SingularMixture {
    fn default() -> Self {
        Self::new()
    }
}

impl SingularMixture {
    pub fn new() -> Self {
        let target = ContinuousTarget::new(
            Box::new(density),
            Box::new(|x: f64| x.sqrt().recip()),
            MIXTURE_MASS,
            INV_SQRT_MASS,
            QUINTIC_MASS,
            Box::new(sample_inv_sqrt),
            Box::new(sample_excess_quintic),
        )
        .expect("mixture masses are fixed positive constants");
        SingularMixture { target }
    }

    /// Draw one value. Dispatches to the no-retry algorithm; since the
    /// excess region is the whole interval, the record never shows a
    /// rejection (`proposals_used + excess_draws == 1`).
    pub fn sample(&self, rng: &mut RngStream) -> SampleRecord<f64> {
        algorithm_one(&self.target, rng).expect("mixture target is well-formed")
    }

    /// Unnormalized density.
    pub fn density(&self, x: f64) -> f64 {
        density(x)
    }

    /// Normalized CDF: `(2 sqrt(x) + (5/4)(1 - (1-x)^(4/5))) / (13/4)`.
    pub fn cdf(&self, x: f64) -> f64 {
        (INV_SQRT_MASS * inv_sqrt_cdf(x) + QUINTIC_MASS * quintic_cdf(x)) / MIXTURE_MASS
    }

    pub fn target(&self) -> &ContinuousTarget {
        &self.target
    }
}

fn density(x: f64) -> f64 {
    x.sqrt().recip() + (1.0 - x).powf(0.2).recip()
}

/// One addend of a mixture density: its mass and an exact sampler.
pub struct MixtureComponent {
    pub mass: f64,
    pub sampler: DrawFn,
}

/// Exact sampler for `p = p_1 + ... + p_n` given exact component samplers
/// and their masses. Component exactness is the caller's responsibility.
pub struct ComponentMixture {
    components: Vec<MixtureComponent>,
    total_mass: f64,
}

impl ComponentMixture {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self, SampleError> {
        if components.is_empty() {
            return Err(SampleError::DegenerateTarget);
        }
        for (i, c) in components.iter().enumerate() {
            if !c.mass.is_finite() || c.mass < 0.0 {
                return Err(SampleError::NegativeWeight {
                    index: i,
                    value: c.mass,
                });
            }
        }
        let total_mass = components.iter().map(|c| c.mass).sum();
        if total_mass <= 0.0 {
            return Err(SampleError::DegenerateTarget);
        }
        Ok(ComponentMixture {
            components,
            total_mass,
        })
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Pick a component with probability proportional to its mass, then draw
    /// from it. Returns `(component, value)`.
    pub fn sample(&self, rng: &mut RngStream) -> (usize, f64) {
        let mut target = rng.uniform() * self.total_mass;
        let mut chosen = self.components.len() - 1;
        for (i, c) in self.components.iter().enumerate() {
            if c.mass <= 0.0 {
                continue;
            }
            if target < c.mass {
                chosen = i;
                break;
            }
            target -= c.mass;
        }
        (chosen, (self.components[chosen].sampler)(rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::ks_statistic;
    use crate::target::Branch;

    #[test]
    fn inverse_transforms_match_closed_forms() {
        assert_eq!(inv_sqrt_transform(0.25), 0.0625);
        let x = quintic_transform(0.5);
        assert!((x - 0.579_551_792_373_142_7).abs() < 1e-15);
        // u -> 0 drives both transforms to the lower endpoint
        assert!(inv_sqrt_transform(1e-8) < 1e-15);
        assert_eq!(quintic_transform(0.0), 0.0);
    }

    #[test]
    fn draws_stay_strictly_interior() {
        let mut rng = RngStream::new(80);
        for _ in 0..200_000 {
            let a = sample_inv_sqrt(&mut rng);
            let b = sample_excess_quintic(&mut rng);
            assert!(a > 0.0 && a < 1.0);
            assert!(b > 0.0 && b < 1.0);
        }
    }

    #[test]
    fn inv_sqrt_component_ks() {
        let n = 200_000;
        let mut rng = RngStream::new(81);
        let mut sample: Vec<f64> = (0..n).map(|_| sample_inv_sqrt(&mut rng)).collect();
        let d = ks_statistic(&mut sample, inv_sqrt_cdf);
        let bound = 1.95 / (n as f64).sqrt();
        assert!(d < bound, "KS {d} over bound {bound}");
    }

    #[test]
    fn quintic_component_ks() {
        let n = 200_000;
        let mut rng = RngStream::new(82);
        let mut sample: Vec<f64> = (0..n).map(|_| sample_excess_quintic(&mut rng)).collect();
        let d = ks_statistic(&mut sample, quintic_cdf);
        let bound = 1.95 / (n as f64).sqrt();
        assert!(d < bound, "KS {d} over bound {bound}");
    }

    #[test]
    fn mixture_never_rejects() {
        let mix = SingularMixture::new();
        let mut rng = RngStream::new(83);
        for _ in 0..100_000 {
            let rec = mix.sample(&mut rng);
            assert!(rec.proposals_used + rec.excess_draws == 1);
            assert!(matches!(
                rec.branch,
                Branch::ExcessDirect | Branch::QAcceptExcess
            ));
        }
    }

    #[test]
    fn mixture_excess_branch_fraction() {
        let mix = SingularMixture::new();
        let mut rng = RngStream::new(84);
        let n = 500_000u64;
        let direct = (0..n)
            .filter(|_| mix.sample(&mut rng).branch == Branch::ExcessDirect)
            .count() as f64;
        let p = 5.0 / 13.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (direct - n as f64 * p).abs() < 3.0 * sigma,
            "excess-direct fraction {} vs {p}",
            direct / n as f64
        );
    }

    #[test]
    fn mixture_ks_against_analytic_cdf() {
        let mix = SingularMixture::new();
        let n = 200_000;
        let mut rng = RngStream::new(85);
        let mut sample: Vec<f64> = (0..n).map(|_| mix.sample(&mut rng).value).collect();
        let d = ks_statistic(&mut sample, |x| mix.cdf(x));
        let bound = 1.95 / (n as f64).sqrt();
        assert!(d < bound, "KS {d} over bound {bound}");
    }

    #[test]
    fn cdf_derivative_matches_density() {
        // independent check of the closed-form CDF: central differences
        // recover p(x) / I[p] at interior points
        let mix = SingularMixture::new();
        for &x in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let h = 1e-6;
            let deriv = (mix.cdf(x + h) - mix.cdf(x - h)) / (2.0 * h);
            let want = mix.density(x) / MIXTURE_MASS;
            assert!(
                (deriv - want).abs() < 1e-5 * want,
                "cdf slope {deriv} vs density {want} at {x}"
            );
        }
        assert_eq!(mix.cdf(0.0), 0.0);
        assert_eq!(mix.cdf(1.0), 1.0);
    }

    #[test]
    fn mixture_mean_matches_quadrature_oracle() {
        // midpoint-rule oracle for the mean of p/I[p]; the x factor tames
        // the left singularity and the right one is integrable
        let cells = 2_000_000;
        let h = 1.0 / cells as f64;
        let mut first_moment = 0.0;
        for i in 0..cells {
            let x = (i as f64 + 0.5) * h;
            first_moment += x * density(x) * h;
        }
        let oracle_mean = first_moment / MIXTURE_MASS;
        // term-wise integration gives 49/117
        assert!(
            (oracle_mean - 49.0 / 117.0).abs() < 1e-4,
            "quadrature mean {oracle_mean}"
        );

        let mix = SingularMixture::new();
        let n = 500_000;
        let mut rng = RngStream::new(86);
        let sum: f64 = (0..n).map(|_| mix.sample(&mut rng).value).sum();
        let sample_mean = sum / n as f64;
        // population std of the mixture is ~0.317
        let sigma_mean = 0.32 / (n as f64).sqrt();
        assert!(
            (sample_mean - oracle_mean).abs() < 3.0 * sigma_mean,
            "sample mean {sample_mean} vs oracle {oracle_mean}"
        );
    }

    #[test]
    fn component_mixture_matches_singular_mixture() {
        // the general two-component form reproduces the same distribution
        let mix = ComponentMixture::new(vec![
            MixtureComponent {
                mass: INV_SQRT_MASS,
                sampler: Box::new(sample_inv_sqrt),
            },
            MixtureComponent {
                mass: QUINTIC_MASS,
                sampler: Box::new(sample_excess_quintic),
            },
        ])
        .unwrap();
        let singular = SingularMixture::new();
        let n = 200_000;
        let mut rng = RngStream::new(87);
        let mut sample: Vec<f64> = (0..n).map(|_| mix.sample(&mut rng).1).collect();
        let d = ks_statistic(&mut sample, |x| singular.cdf(x));
        assert!(d < 1.95 / (n as f64).sqrt());
    }

    #[test]
    fn component_mixture_rejects_empty_and_zero_mass() {
        assert!(ComponentMixture::new(vec![]).is_err());
        let zero = ComponentMixture::new(vec![MixtureComponent {
            mass: 0.0,
            sampler: Box::new(sample_inv_sqrt),
        }]);
        assert!(zero.is_err());
    }
}
