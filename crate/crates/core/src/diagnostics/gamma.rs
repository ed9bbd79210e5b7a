//! `Γ = (y⁺/U⁺) dU⁺/dy⁺ = d ln U⁺ / d ln y⁺`, evaluated by finite differences
//! in log-log coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{FitWindow, VelocityProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaPoint {
    pub y_plus: f64,
    pub gamma: f64,
}

/// Γ at every interior sample (three-point stencil), plus the two endpoint
/// values from one-sided differences kept apart from the series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaSeries {
    pub run_id: String,
    pub points: Vec<GammaPoint>,
    pub lower_endpoint: GammaPoint,
    pub upper_endpoint: GammaPoint,
}

pub fn gamma_series(profile: &VelocityProfile) -> Result<GammaSeries> {
    let s = profile.samples();
    if s.len() < 3 {
        return Err(Error::InsufficientData {
            run_id: profile.run_id().to_owned(),
            needed: 3,
            found: s.len(),
        });
    }
    let xs: Vec<f64> = s.iter().map(|p| p.y_plus.ln()).collect();
    let fs: Vec<f64> = s.iter().map(|p| p.u_plus.ln()).collect();

    let points = (1..s.len() - 1)
        .map(|i| {
            // Second-order derivative on a non-uniform grid; reduces to the
            // centred difference when the spacing is uniform in ln y⁺.
            let h1 = xs[i] - xs[i - 1];
            let h2 = xs[i + 1] - xs[i];
            let gamma = (h1 * h1 * (fs[i + 1] - fs[i]) + h2 * h2 * (fs[i] - fs[i - 1]))
                / (h1 * h2 * (h1 + h2));
            GammaPoint {
                y_plus: s[i].y_plus,
                gamma,
            }
        })
        .collect();
    let n = s.len();
    Ok(GammaSeries {
        run_id: profile.run_id().to_owned(),
        points,
        lower_endpoint: GammaPoint {
            y_plus: s[0].y_plus,
            gamma: (fs[1] - fs[0]) / (xs[1] - xs[0]),
        },
        upper_endpoint: GammaPoint {
            y_plus: s[n - 1].y_plus,
            gamma: (fs[n - 1] - fs[n - 2]) / (xs[n - 1] - xs[n - 2]),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constancy {
    Constant,
    Varying,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstancyVerdict {
    pub verdict: Constancy,
    pub mean: f64,
    /// Population standard deviation.
    pub stddev: f64,
    pub n_points: usize,
}

/// Γ is called constant over `window` when `stddev / |mean| ≤ tol`.
/// Endpoint values never take part.
pub fn constancy_check(
    series: &GammaSeries,
    window: &FitWindow,
    tol: f64,
) -> Result<ConstancyVerdict> {
    let values: Vec<f64> = series
        .points
        .iter()
        .filter(|p| window.contains(p.y_plus))
        .map(|p| p.gamma)
        .collect();
    if values.len() < 3 {
        return Err(Error::InsufficientData {
            run_id: series.run_id.clone(),
            needed: 3,
            found: values.len(),
        });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stddev = (values.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / n).sqrt();
    let verdict = if stddev <= tol * mean.abs() {
        Constancy::Constant
    } else {
        Constancy::Varying
    };
    Ok(ConstancyVerdict {
        verdict,
        mean,
        stddev,
        n_points: values.len(),
    })
}
