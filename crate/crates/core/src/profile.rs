//! Velocity profiles in wall units and the y⁺ windows that fits operate on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed above the free-stream ceiling `U / u_tau`.
pub const FREE_STREAM_SLACK: f64 = 0.02;

/// One `(y⁺, Ū⁺)` sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub y_plus: f64,
    pub u_plus: f64,
}

impl Sample {
    pub const fn new(y_plus: f64, u_plus: f64) -> Self {
        Self { y_plus, u_plus }
    }
}

/// A single experimental run: metadata plus samples sorted by wall distance.
///
/// Construction validates every invariant, so a `VelocityProfile` in hand is
/// always nonempty, strictly increasing in y⁺ and positive in both
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocityProfile {
    run_id: String,
    re_theta: f64,
    u_inf: Option<f64>,
    u_tau: Option<f64>,
    nu: Option<f64>,
    samples: Vec<Sample>,
}

impl VelocityProfile {
    pub fn new(run_id: impl Into<String>, re_theta: f64, samples: Vec<Sample>) -> Result<Self> {
        Self::with_metadata(run_id, re_theta, None, None, None, samples)
    }

    pub fn with_metadata(
        run_id: impl Into<String>,
        re_theta: f64,
        u_inf: Option<f64>,
        u_tau: Option<f64>,
        nu: Option<f64>,
        samples: Vec<Sample>,
    ) -> Result<Self> {
        let profile = Self {
            run_id: run_id.into(),
            re_theta,
            u_inf,
            u_tau,
            nu,
            samples,
        };
        profile.validate()?;
        Ok(profile)
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidProfile {
            run_id: self.run_id.clone(),
            reason: reason.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.re_theta.is_finite() && self.re_theta > 0.0) {
            return Err(self.invalid(format!("re_theta must be positive, got {}", self.re_theta)));
        }
        for (name, value) in [
            ("u_inf", self.u_inf),
            ("u_tau", self.u_tau),
            ("nu", self.nu),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(self.invalid(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if self.samples.is_empty() {
            return Err(self.invalid("samples nonempty"));
        }
        for (i, s) in self.samples.iter().enumerate() {
            if !(s.y_plus.is_finite() && s.y_plus > 0.0) {
                return Err(
                    self.invalid(format!("sample {i}: y+ must be positive, got {}", s.y_plus))
                );
            }
            if !(s.u_plus.is_finite() && s.u_plus > 0.0) {
                return Err(
                    self.invalid(format!("sample {i}: U+ must be positive, got {}", s.u_plus))
                );
            }
        }
        if let Some(i) = self
            .samples
            .windows(2)
            .position(|w| w[1].y_plus <= w[0].y_plus)
        {
            return Err(self.invalid(format!(
                "y+ not strictly increasing at sample {} ({} after {})",
                i + 1,
                self.samples[i + 1].y_plus,
                self.samples[i].y_plus
            )));
        }
        if let (Some(u_inf), Some(u_tau)) = (self.u_inf, self.u_tau) {
            let ceiling = u_inf / u_tau * (1.0 + FREE_STREAM_SLACK);
            let max = self.max_u_plus();
            if max > ceiling {
                return Err(self.invalid(format!(
                    "max U+ = {max} exceeds free-stream ceiling {ceiling}"
                )));
            }
        }
        Ok(())
    }

    pub fn run_id(&self) -> &str {
        &self.run_id
    }

    pub fn re_theta(&self) -> f64 {
        self.re_theta
    }

    pub fn u_inf(&self) -> Option<f64> {
        self.u_inf
    }

    pub fn u_tau(&self) -> Option<f64> {
        self.u_tau
    }

    pub fn nu(&self) -> Option<f64> {
        self.nu
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_u_plus(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.u_plus)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The contiguous run of samples whose y⁺ lies inside `window` (inclusive).
    pub fn samples_in(&self, window: &FitWindow) -> &[Sample] {
        let start = self
            .samples
            .partition_point(|s| s.y_plus < window.lo_y_plus);
        let end = self
            .samples
            .partition_point(|s| s.y_plus <= window.hi_y_plus);
        &self.samples[start..end.max(start)]
    }

    /// Same run with a different identifier.
    pub fn renamed(mut self, run_id: impl Into<String>) -> Self {
        self.run_id = run_id.into();
        self
    }
}

/// Closed interval `[lo, hi]` in y⁺.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitWindow {
    pub lo_y_plus: f64,
    pub hi_y_plus: f64,
}

impl FitWindow {
    pub fn new(lo_y_plus: f64, hi_y_plus: f64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidWindow {
            lo: lo_y_plus,
            hi: hi_y_plus,
            reason: reason.to_owned(),
        };
        if !(lo_y_plus.is_finite() && hi_y_plus.is_finite()) {
            return Err(invalid("bounds must be finite"));
        }
        if lo_y_plus <= 0.0 {
            return Err(invalid("lower bound must be positive"));
        }
        if lo_y_plus >= hi_y_plus {
            return Err(invalid("lower bound must be below upper bound"));
        }
        Ok(Self {
            lo_y_plus,
            hi_y_plus,
        })
    }

    /// Window spanning every sample of `profile`.
    pub fn spanning(profile: &VelocityProfile) -> Result<Self> {
        let s = profile.samples();
        Self::new(s[0].y_plus, s[s.len() - 1].y_plus)
    }

    pub fn contains(&self, y_plus: f64) -> bool {
        self.lo_y_plus <= y_plus && y_plus <= self.hi_y_plus
    }
}
