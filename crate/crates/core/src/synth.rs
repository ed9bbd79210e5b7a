//! Ground-truth profiles with a known two-layer structure.
//!
//! Region I (`y⁺ ≤ breakpoint`) follows the scaling law at `ln_re`; region II
//! is `B (y⁺)^β` with `B` chosen so the two branches meet at the breakpoint.
//! An optional near-wall sublayer (`U⁺ = y⁺` below 5, blended linearly in
//! `(ln y⁺, ln U⁺)` up to 30) is test scaffolding only. Noise is
//! multiplicative lognormal, so `ln U⁺` carries zero-mean Gaussian noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::law::{scaling_exponent, scaling_prefactor};
use crate::profile::{Sample, VelocityProfile};

const SUBLAYER_LINEAR_TOP: f64 = 5.0;
const SUBLAYER_BLEND_TOP: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub run_id: String,
    /// Nominal momentum-thickness Reynolds number carried as metadata.
    pub re_theta: f64,
    pub ln_re: f64,
    pub breakpoint_y_plus: f64,
    pub beta: f64,
    pub y_plus_min: f64,
    pub y_plus_max: f64,
    pub n_points: usize,
    pub noise_rel_sigma: f64,
    pub seed: u64,
    pub include_sublayer: bool,
}

impl SynthSpec {
    /// Noiseless two-layer run on `[30, 10⁴]` with 200 log-uniform points,
    /// breakpoint at 300 and `β = α + 0.06`.
    pub fn new(ln_re: f64) -> Self {
        Self {
            run_id: "synth".to_owned(),
            re_theta: nominal_re_theta(ln_re),
            ln_re,
            breakpoint_y_plus: 300.0,
            beta: scaling_exponent(ln_re) + 0.06,
            y_plus_min: 30.0,
            y_plus_max: 1e4,
            n_points: 200,
            noise_rel_sigma: 0.0,
            seed: 0,
            include_sublayer: false,
        }
    }

    /// Region I only: `β = α`, so the law holds over the whole grid.
    pub fn single_layer(mut self) -> Self {
        self.beta = self.alpha();
        self
    }

    pub fn alpha(&self) -> f64 {
        scaling_exponent(self.ln_re)
    }

    pub fn prefactor(&self) -> f64 {
        scaling_prefactor(self.ln_re)
    }

    /// Region-II prefactor `B = A (y⁺*)^(α − β)`.
    pub fn region2_prefactor(&self) -> f64 {
        self.prefactor() * self.breakpoint_y_plus.powf(self.alpha() - self.beta)
    }

    /// Log-uniform grid, with the end points hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = (self.y_plus_min.ln(), self.y_plus_max.ln());
        let last = self.n_points - 1;
        (0..self.n_points)
            .map(|i| match i {
                0 => self.y_plus_min,
                i if i == last => self.y_plus_max,
                i => (lo + (hi - lo) * i as f64 / last as f64).exp(),
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| {
            Err(Error::InvalidConfig(format!(
                "synth spec `{}`: {m}",
                self.run_id
            )))
        };
        if !(self.ln_re > 0.0 && self.ln_re.is_finite()) {
            return fail(format!("ln_re must be positive, got {}", self.ln_re));
        }
        if !(self.re_theta > 0.0) {
            return fail(format!("re_theta must be positive, got {}", self.re_theta));
        }
        if !(self.y_plus_min > 0.0
            && self.y_plus_min < self.breakpoint_y_plus
            && self.breakpoint_y_plus < self.y_plus_max
            && self.y_plus_max.is_finite())
        {
            return fail(format!(
                "need 0 < y_plus_min < breakpoint < y_plus_max, got {} < {} < {}",
                self.y_plus_min, self.breakpoint_y_plus, self.y_plus_max
            ));
        }
        if self.include_sublayer && self.breakpoint_y_plus <= SUBLAYER_BLEND_TOP {
            return fail(format!(
                "breakpoint must lie above the sublayer blend ({SUBLAYER_BLEND_TOP}), got {}",
                self.breakpoint_y_plus
            ));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return fail(format!("beta must be positive, got {}", self.beta));
        }
        if self.n_points < 20 {
            return fail(format!("need at least 20 points, got {}", self.n_points));
        }
        if !(self.noise_rel_sigma >= 0.0 && self.noise_rel_sigma.is_finite()) {
            return fail(format!(
                "noise must be non-negative, got {}",
                self.noise_rel_sigma
            ));
        }
        Ok(())
    }

    /// Noiseless outer profile (no sublayer).
    fn outer(&self, y: f64) -> f64 {
        if y <= self.breakpoint_y_plus {
            self.prefactor() * y.powf(self.alpha())
        } else {
            self.region2_prefactor() * y.powf(self.beta)
        }
    }

    /// Noiseless U⁺ at `y`.
    pub fn noiseless_u_plus(&self, y: f64) -> f64 {
        if !self.include_sublayer || y >= SUBLAYER_BLEND_TOP {
            return self.outer(y);
        }
        if y <= SUBLAYER_LINEAR_TOP {
            return y;
        }
        let (x0, x1) = (SUBLAYER_LINEAR_TOP.ln(), SUBLAYER_BLEND_TOP.ln());
        let (f0, f1) = (
            SUBLAYER_LINEAR_TOP.ln(),
            self.outer(SUBLAYER_BLEND_TOP).ln(),
        );
        let t = (y.ln() - x0) / (x1 - x0);
        (f0 + t * (f1 - f0)).exp()
    }
}

/// Placeholder Re_θ for synthetic runs: monotone in `ln Re`, roughly matching
/// the ratio `Re / Re_θ ≈ 5` seen at moderate Reynolds numbers.
pub fn nominal_re_theta(ln_re: f64) -> f64 {
    (ln_re.exp() / 5.0).round().max(1.0)
}

pub fn generate_profile(spec: &SynthSpec) -> Result<VelocityProfile> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let samples = spec
        .grid()
        .into_iter()
        .map(|y| {
            let z: f64 = StandardNormal.sample(&mut rng);
            let u = spec.noiseless_u_plus(y) * (spec.noise_rel_sigma * z).exp();
            Sample::new(y, u)
        })
        .collect();
    VelocityProfile::new(spec.run_id.clone(), spec.re_theta, samples)
}

/// Generates every spec, assigning run ids `synth-000`, `synth-001`, ...
pub fn generate_ensemble(specs: &[SynthSpec]) -> Result<Vec<VelocityProfile>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let spec = SynthSpec {
                run_id: format!("synth-{i:03}"),
                ..spec.clone()
            };
            generate_profile(&spec)
        })
        .collect()
}
