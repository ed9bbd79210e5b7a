//! Least-squares fitting: window selection, single power laws, two-layer
//! (breakpoint) power laws, and log laws.

mod log_law;
pub mod ols;
mod power_law;
mod two_layer;
mod window;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use log_law::{fit_log_law, fit_log_law_with, LogLawFit};
pub use ols::{Coordinates, LineFit};
pub use power_law::{fit_power_law, PowerLawFit};
pub use two_layer::{fit_two_layer, NoTwoLayer, NoTwoLayerReason, TwoLayerFit, TwoLayerOutcome};
pub use window::{outer_thickness, select_intermediate_window};

/// How the breakpoint between the two layers is located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BreakpointSearch {
    /// Every admissible split is evaluated.
    #[default]
    Exhaustive,
    /// Golden-section bracketing over split positions, finished by a local scan.
    GoldenSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    /// Samples below this y⁺ belong to the viscous sublayer.
    pub sublayer_cutoff_y_plus: f64,
    /// Samples with U⁺ above this fraction of the run maximum belong to the wake.
    pub wake_cutoff_velocity_fraction: f64,
    pub min_points_per_segment: usize,
    /// Smallest |β − α| accepted as a genuine second layer.
    pub min_slope_gap: f64,
    pub breakpoint_search: BreakpointSearch,
    /// Reject a two-layer split when one parabola in log-log coordinates
    /// fits the window at least as well as the two lines.
    pub reject_smooth_curvature: bool,
    /// U⁺ fraction of the maximum that defines the outer thickness used by
    /// the log-law outer limit (0.95 gives δ₉₅).
    pub outer_thickness_fraction: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            sublayer_cutoff_y_plus: 30.0,
            wake_cutoff_velocity_fraction: 0.95,
            min_points_per_segment: 5,
            min_slope_gap: 0.005,
            breakpoint_search: BreakpointSearch::Exhaustive,
            reject_smooth_curvature: true,
            outer_thickness_fraction: 0.95,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidConfig(m));
        if !(self.sublayer_cutoff_y_plus > 0.0 && self.sublayer_cutoff_y_plus.is_finite()) {
            return fail(format!(
                "sublayer cutoff must be positive, got {}",
                self.sublayer_cutoff_y_plus
            ));
        }
        let f = self.wake_cutoff_velocity_fraction;
        if !(f > 0.0 && f < 1.0) {
            return fail(format!("wake cutoff fraction must lie in (0, 1), got {f}"));
        }
        if self.min_points_per_segment < 3 {
            return fail(format!(
                "min points per segment must be at least 3, got {}",
                self.min_points_per_segment
            ));
        }
        if !(self.min_slope_gap >= 0.0 && self.min_slope_gap.is_finite()) {
            return fail(format!(
                "min slope gap must be non-negative, got {}",
                self.min_slope_gap
            ));
        }
        let t = self.outer_thickness_fraction;
        if !(t > 0.0 && t <= 1.0) {
            return fail(format!(
                "outer thickness fraction must lie in (0, 1], got {t}"
            ));
        }
        Ok(())
    }
}
