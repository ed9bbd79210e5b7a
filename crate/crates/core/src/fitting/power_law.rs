use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::ols::{fit_samples, Coordinates, LineFit};
use crate::profile::{FitWindow, Sample, VelocityProfile};

/// `U⁺ = prefactor · (y⁺)^exponent` fitted in log-log coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub exponent_stderr: f64,
    /// Standard error of `ln prefactor`, i.e. the relative error of the prefactor.
    pub prefactor_rel_stderr: f64,
    pub rms_log_residual: f64,
    pub n_points: usize,
    pub window: FitWindow,
}

/// Fitted slopes at or below this are treated as zero.
const ZERO_EXPONENT: f64 = 1e-12;

impl PowerLawFit {
    pub(crate) fn from_line(line: &LineFit, window: FitWindow) -> Result<Self> {
        if !(line.slope > ZERO_EXPONENT && line.slope < 1.0) {
            return Err(Error::DegenerateFit(format!(
                "power-law exponent {} outside (0, 1)",
                line.slope
            )));
        }
        Ok(Self {
            exponent: line.slope,
            prefactor: line.intercept.exp(),
            exponent_stderr: line.slope_stderr,
            prefactor_rel_stderr: line.intercept_stderr,
            rms_log_residual: line.rms_residual(),
            n_points: line.n,
            window,
        })
    }

    pub fn eval(&self, y_plus: f64) -> f64 {
        self.prefactor * y_plus.powf(self.exponent)
    }
}

pub(crate) fn fit_power_law_samples(
    run_id: &str,
    samples: &[Sample],
    window: FitWindow,
) -> Result<PowerLawFit> {
    if samples.len() < 3 {
        return Err(Error::InsufficientData {
            run_id: run_id.to_owned(),
            needed: 3,
            found: samples.len(),
        });
    }
    let line = fit_samples(samples, Coordinates::LogLog)?;
    PowerLawFit::from_line(&line, window)
}

/// OLS of `ln U⁺` on `ln y⁺` over the samples inside `window`.
pub fn fit_power_law(profile: &VelocityProfile, window: &FitWindow) -> Result<PowerLawFit> {
    fit_power_law_samples(profile.run_id(), profile.samples_in(window), *window)
}
