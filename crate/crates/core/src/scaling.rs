//! Effective Reynolds numbers recovered from a region-I power-law fit, the
//! length scale they imply, and the ψ collapse test.
//!
//! A region-I fit `U⁺ = A (y⁺)^α` gives two independent estimates of `ln Re`
//! when matched against the scaling law:
//!
//! ```text
//! ln Re₁ = √3 (A − 5/2)        (from the prefactor)
//! ln Re₂ = 3 / (2α)            (from the exponent)
//! ```
//!
//! Their arithmetic mean is the log of the geometric mean `Re = √(Re₁ Re₂)`,
//! and `Δ = |ln Re₂ − ln Re₁| / ln Re` measures how well a single `Re`
//! explains both coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::PowerLawFit;
use crate::law::{psi_transform, scaling_exponent, SQRT_3};
use crate::profile::{FitWindow, VelocityProfile};

/// Δ above which a high-Re run is considered inconsistent with the law.
pub const DELTA_CONSISTENCY_LIMIT: f64 = 0.03;
/// Re_θ above which the Δ limit applies.
pub const DELTA_CHECK_MIN_RE_THETA: f64 = 10_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveReynolds {
    pub ln_re1: f64,
    pub ln_re2: f64,
    pub ln_re: f64,
    /// `|ln Re₂ − ln Re₁| / ln Re`, as a fraction.
    pub delta: f64,
    pub lambda_scale: Option<f64>,
}

impl EffectiveReynolds {
    /// Whether the run violates the Δ limit (only judged above the Re_θ threshold).
    pub fn is_inconsistent(&self, re_theta: f64) -> bool {
        re_theta > DELTA_CHECK_MIN_RE_THETA && self.delta > DELTA_CONSISTENCY_LIMIT
    }

    pub fn with_length_scale(mut self, u_inf: f64, nu: f64) -> Result<Self> {
        self.lambda_scale = Some(length_scale(&self, u_inf, nu)?);
        Ok(self)
    }
}

/// Solves the prefactor and exponent equations for `(ln Re₁, ln Re₂)`.
pub fn solve_ln_re(fit: &PowerLawFit) -> Result<(f64, f64)> {
    if !(fit.exponent > 0.0) {
        return Err(Error::domain(format!(
            "exponent must be positive, got {}",
            fit.exponent
        )));
    }
    let ln_re1 = SQRT_3 * (fit.prefactor - 2.5);
    if !(ln_re1 > 0.0) {
        return Err(Error::NonphysicalPrefactor {
            prefactor: fit.prefactor,
        });
    }
    Ok((ln_re1, 1.5 / fit.exponent))
}

pub fn effective_reynolds(ln_re1: f64, ln_re2: f64) -> Result<EffectiveReynolds> {
    for (name, v) in [("ln Re1", ln_re1), ("ln Re2", ln_re2)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(format!("{name} must be positive, got {v}")));
        }
    }
    let ln_re = (ln_re1 + ln_re2) / 2.0;
    Ok(EffectiveReynolds {
        ln_re1,
        ln_re2,
        ln_re,
        delta: (ln_re2 - ln_re1).abs() / ln_re,
        lambda_scale: None,
    })
}

/// `Λ = Re · ν / U`.
pub fn length_scale(eff: &EffectiveReynolds, u_inf: f64, nu: f64) -> Result<f64> {
    if !(u_inf > 0.0 && u_inf.is_finite()) {
        return Err(Error::domain(format!(
            "free-stream velocity must be positive, got {u_inf}"
        )));
    }
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::domain(format!(
            "viscosity must be positive, got {nu}"
        )));
    }
    Ok(eff.ln_re.exp() * nu / u_inf)
}

/// [`length_scale`] using the run's own metadata.
pub fn length_scale_for(eff: &EffectiveReynolds, profile: &VelocityProfile) -> Result<f64> {
    let missing = |field| Error::MetadataRequired {
        run_id: profile.run_id().to_owned(),
        field,
    };
    let u_inf = profile.u_inf().ok_or_else(|| missing("u_inf"))?;
    let nu = profile.nu().ok_or_else(|| missing("nu"))?;
    length_scale(eff, u_inf, nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollapsePoint {
    pub ln_y_plus: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseResult {
    pub points: Vec<CollapsePoint>,
    /// RMS of `ψ − ln y⁺` over the defined points.
    pub rms_off_bisectrix: f64,
    pub n_excluded: usize,
}

impl CollapseResult {
    pub fn sum_sq_off_bisectrix(&self) -> f64 {
        self.points
            .iter()
            .map(|p| (p.psi - p.ln_y_plus).powi(2))
            .sum()
    }
}

/// Maps the in-window samples through ψ with `α = 3 / (2 ln Re)`.
pub fn collapse_profile(
    profile: &VelocityProfile,
    window: &FitWindow,
    ln_re: f64,
) -> Result<CollapseResult> {
    if !(ln_re > 0.0 && ln_re.is_finite()) {
        return Err(Error::domain(format!(
            "ln Re must be positive, got {ln_re}"
        )));
    }
    let alpha = scaling_exponent(ln_re);
    let mut points = Vec::new();
    let mut n_excluded = 0;
    for s in profile.samples_in(window) {
        match psi_transform(s.u_plus, alpha)? {
            Some(psi) => points.push(CollapsePoint {
                ln_y_plus: s.y_plus.ln(),
                psi,
            }),
            None => n_excluded += 1,
        }
    }
    if points.is_empty() {
        return Err(Error::AllPointsUndefined);
    }
    let mut result = CollapseResult {
        points,
        rms_off_bisectrix: 0.0,
        n_excluded,
    };
    result.rms_off_bisectrix = (result.sum_sq_off_bisectrix() / result.points.len() as f64).sqrt();
    Ok(result)
}

/// Pooled RMS of `ψ − ln y⁺` over several collapse results.
pub fn pooled_rms(results: &[CollapseResult]) -> Option<f64> {
    let n: usize = results.iter().map(|r| r.points.len()).sum();
    (n > 0).then(|| {
        let ss: f64 = results
            .iter()
            .map(CollapseResult::sum_sq_off_bisectrix)
            .sum();
        (ss / n as f64).sqrt()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::law::predict_scaling_law;
    use crate::profile::Sample;

    fn fit(alpha: f64, a: f64) -> PowerLawFit {
        PowerLawFit {
            exponent: alpha,
            prefactor: a,
            exponent_stderr: 0.0,
            prefactor_rel_stderr: 0.0,
            rms_log_residual: 0.0,
            n_points: 10,
            window: FitWindow::new(30.0, 300.0).unwrap(),
        }
    }

    #[test]
    fn inverts_tabulated_rows() {
        // (alpha, A) -> tabulated (ln Re1, ln Re2); the tabulated alpha is rounded to 3 digits.
        for (alpha, a, re1, re2) in [(0.157, 7.84, 9.24, 9.57), (0.120, 9.74, 12.54, 12.48)] {
            let (l1, l2) = solve_ln_re(&fit(alpha, a)).unwrap();
            assert!((l1 - re1).abs() <= 0.05, "{l1} vs {re1}");
            assert!((l2 - re2).abs() <= 0.05, "{l2} vs {re2}");
        }
        let (l1, l2) = solve_ln_re(&fit(0.157, 7.84)).unwrap();
        assert!((l1 - 9.249_151_312_417_805).abs() < 1e-12);
        assert!((l2 - 9.554_140_127_388_536).abs() < 1e-12);
    }

    #[test]
    fn prefactor_at_five_halves_is_nonphysical() {
        assert!(matches!(
            solve_ln_re(&fit(0.15, 2.5)).unwrap_err(),
            Error::NonphysicalPrefactor { .. }
        ));
    }

    #[test]
    fn effective_reynolds_rows() {
        let e = effective_reynolds(9.24, 9.57).unwrap();
        assert!((e.ln_re - 9.405).abs() < 1e-12);
        assert!((e.delta * 100.0 - 3.4).abs() <= 0.2);

        let e = effective_reynolds(11.28, 11.39).unwrap();
        assert!((e.ln_re - 11.335).abs() < 1e-12);
        assert!((e.delta * 100.0 - 0.97).abs() < 0.005);

        let e = effective_reynolds(7.5, 7.5).unwrap();
        assert_eq!(e.ln_re, 7.5);
        assert_eq!(e.delta, 0.0);

        assert!(effective_reynolds(0.0, 7.5).is_err());
        assert!(effective_reynolds(7.5, -1.0).is_err());
    }

    #[test]
    fn length_scale_values() {
        let e = effective_reynolds(1e6f64.ln(), 1e6f64.ln()).unwrap();
        assert!((length_scale(&e, 10.0, 1.5e-5).unwrap() - 1.5).abs() < 1e-9);

        // mpmath: e^9.4 * 1.5e-5 / 20 = 9.066285547662738e-3
        let e = effective_reynolds(9.4, 9.4).unwrap();
        let lambda = length_scale(&e, 20.0, 1.5e-5).unwrap();
        assert!((lambda - 9.066_285_547_662_738e-3).abs() < 1e-15);
        assert!(e
            .with_length_scale(20.0, 1.5e-5)
            .unwrap()
            .lambda_scale
            .is_some());
    }

    #[test]
    fn length_scale_requires_metadata() {
        let p = VelocityProfile::with_metadata(
            "no-nu",
            1e4,
            Some(10.0),
            Some(0.4),
            None,
            vec![Sample::new(50.0, 15.0)],
        )
        .unwrap();
        let e = effective_reynolds(10.0, 10.0).unwrap();
        match length_scale_for(&e, &p).unwrap_err() {
            Error::MetadataRequired { field, run_id } => {
                assert_eq!(field, "nu");
                assert_eq!(run_id, "no-nu");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    fn law_profile(ln_re: f64) -> VelocityProfile {
        let samples = (0..200)
            .map(|i| {
                let y = (30f64.ln() + 100f64.ln() * i as f64 / 199.0).exp();
                Sample::new(y, predict_scaling_law(y, ln_re).unwrap())
            })
            .collect();
        VelocityProfile::new("law", 5000.0, samples).unwrap()
    }

    #[test]
    fn collapse_exact_for_own_reynolds_number() {
        let p = law_profile(9.4);
        let c = collapse_profile(&p, &FitWindow::spanning(&p).unwrap(), 9.4).unwrap();
        assert!(c.rms_off_bisectrix <= 1e-12, "{}", c.rms_off_bisectrix);
        assert_eq!(c.points.len(), 200);
        assert_eq!(c.n_excluded, 0);
    }

    #[test]
    fn collapse_perturbed_reynolds_number_baseline() {
        // mpmath, 40 digits, same 200-point grid on [30, 3000]: 0.0978890699540886505...
        let p = law_profile(9.4);
        let c = collapse_profile(&p, &FitWindow::spanning(&p).unwrap(), 9.9).unwrap();
        assert!(
            (c.rms_off_bisectrix - 0.097_889_069_954_088_65).abs() < 1e-10,
            "{}",
            c.rms_off_bisectrix
        );
    }

    #[test]
    fn collapse_rejects_bad_reynolds_number() {
        let p = law_profile(9.4);
        assert!(collapse_profile(&p, &FitWindow::spanning(&p).unwrap(), 0.0).is_err());
    }
}
