use crate::error::{Error, Result};
use crate::fitting::FitConfig;
use crate::profile::{FitWindow, VelocityProfile};

/// Intermediate region between the viscous sublayer and the free stream.
///
/// The window starts at the first sample with `y⁺ ≥ sublayer_cutoff` and ends
/// at the last such sample whose U⁺ does not exceed
/// `wake_cutoff_velocity_fraction · max U⁺`. It must hold at least
/// `2 · min_points_per_segment` samples so a two-layer fit is possible.
pub fn select_intermediate_window(profile: &VelocityProfile, cfg: &FitConfig) -> Result<FitWindow> {
    cfg.validate()?;
    let needed = 2 * cfg.min_points_per_segment;
    let insufficient = |found| Error::InsufficientData {
        run_id: profile.run_id().to_owned(),
        needed,
        found,
    };
    let samples = profile.samples();
    let ceiling = cfg.wake_cutoff_velocity_fraction * profile.max_u_plus();
    let start = samples.partition_point(|s| s.y_plus < cfg.sublayer_cutoff_y_plus);
    let Some(last) = samples[start..].iter().rposition(|s| s.u_plus <= ceiling) else {
        return Err(insufficient(0));
    };
    let end = start + last;
    let found = end + 1 - start;
    if found < needed {
        return Err(insufficient(found));
    }
    FitWindow::new(samples[start].y_plus, samples[end].y_plus)
}

/// Smallest y⁺ at which U⁺ first reaches `fraction · max U⁺`.
pub fn outer_thickness(profile: &VelocityProfile, fraction: f64) -> f64 {
    let target = fraction * profile.max_u_plus();
    profile
        .samples()
        .iter()
        .find(|s| s.u_plus >= target)
        .map(|s| s.y_plus)
        .expect("the maximum sample always reaches the target")
}
