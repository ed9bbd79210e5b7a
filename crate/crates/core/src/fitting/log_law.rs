use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::ols::{fit_samples, Coordinates};
use crate::fitting::outer_thickness;
use crate::profile::{Sample, VelocityProfile};

/// `U⁺ = (1/κ) ln y⁺ + B` fitted in semilog coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLawFit {
    pub kappa: f64,
    pub b_const: f64,
    /// Lower y⁺ limit of the fit.
    pub m1: f64,
    /// Upper limit as a fraction of the outer thickness.
    pub m0: f64,
    /// Outer thickness (in y⁺) that `m0` refers to.
    pub outer_thickness_y_plus: f64,
    pub kappa_stderr: f64,
    /// RMS residual in U⁺.
    pub rms_residual: f64,
    pub n_points: usize,
}

/// Log-law fit over `y⁺ ≥ m1` and `y⁺ ≤ m0 · δ₉₅`.
pub fn fit_log_law(profile: &VelocityProfile, m1: f64, m0: f64) -> Result<LogLawFit> {
    fit_log_law_with(profile, m1, m0, 0.95)
}

/// As [`fit_log_law`], with the outer thickness defined by the first sample
/// reaching `thickness_fraction · max U⁺`.
pub fn fit_log_law_with(
    profile: &VelocityProfile,
    m1: f64,
    m0: f64,
    thickness_fraction: f64,
) -> Result<LogLawFit> {
    if !(m1 > 0.0 && m1.is_finite()) {
        return Err(Error::domain(format!("M1 must be positive, got {m1}")));
    }
    if !(m0 > 0.0 && m0 < 1.0) {
        return Err(Error::domain(format!("M0 must lie in (0, 1), got {m0}")));
    }
    if !(thickness_fraction > 0.0 && thickness_fraction <= 1.0) {
        return Err(Error::domain(format!(
            "thickness fraction must lie in (0, 1], got {thickness_fraction}"
        )));
    }
    let delta = outer_thickness(profile, thickness_fraction);
    let upper = m0 * delta;
    let inside: Vec<Sample> = profile
        .samples()
        .iter()
        .filter(|s| s.y_plus >= m1 && s.y_plus <= upper)
        .copied()
        .collect();
    if inside.len() < 3 {
        return Err(Error::InsufficientData {
            run_id: profile.run_id().to_owned(),
            needed: 3,
            found: inside.len(),
        });
    }
    let line = fit_samples(&inside, Coordinates::SemiLog)?;
    if !(line.slope > 0.0) {
        return Err(Error::DegenerateFit(format!(
            "log-law slope {} gives a non-positive kappa",
            line.slope
        )));
    }
    Ok(LogLawFit {
        kappa: 1.0 / line.slope,
        b_const: line.intercept,
        m1,
        m0,
        outer_thickness_y_plus: delta,
        kappa_stderr: line.slope_stderr / (line.slope * line.slope),
        rms_residual: line.rms_residual(),
        n_points: line.n,
    })
}
