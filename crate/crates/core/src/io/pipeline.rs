//! The per-run analysis chain and its aggregation.
//!
//! For each run: intermediate window → two-layer fit → `ln Re` inversion →
//! ψ collapse over region I → Γ constancy checks → log-law fits for every
//! configured window. A failing stage is recorded in the run's report and
//! the remaining stages still run where their inputs exist.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    build_table, constancy_check, gamma_series, ConstancyVerdict, TableEntry, TableRow,
};
use crate::error::{Error, Result};
use crate::fitting::{
    fit_log_law_with, fit_two_layer, select_intermediate_window, FitConfig, LogLawFit,
    TwoLayerOutcome,
};
use crate::io::catalog::{sort_profiles, Catalog, LoadFailure};
use crate::profile::{FitWindow, VelocityProfile};
use crate::scaling::{
    collapse_profile, effective_reynolds, length_scale, solve_ln_re, CollapseResult,
    EffectiveReynolds,
};

pub const REPORT_SCHEMA: &str = "wallscale-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLawWindow {
    pub m1: f64,
    pub m0: f64,
}

impl LogLawWindow {
    pub fn label(&self) -> String {
        format!("m1={}_m0={}", self.m1, self.m0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub fit: FitConfig,
    /// Log-law windows; the customary one and the extended lower limit.
    pub log_law_windows: Vec<LogLawWindow>,
    /// Relative spread below which Γ counts as constant.
    pub constancy_tol: f64,
    /// Collapse every run with this `ln Re` instead of its own estimate.
    pub collapse_ln_re: Option<f64>,
    pub gamma_bins_per_decade: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            fit: FitConfig::default(),
            log_law_windows: vec![
                LogLawWindow { m1: 50.0, m0: 0.15 },
                LogLawWindow {
                    m1: 200.0,
                    m0: 0.15,
                },
            ],
            constancy_tol: 0.05,
            collapse_ln_re: None,
            gamma_bins_per_decade: 20,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.fit.validate()?;
        if !(self.constancy_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "constancy tolerance must be positive, got {}",
                self.constancy_tol
            )));
        }
        if self.gamma_bins_per_decade == 0 {
            return Err(Error::InvalidConfig(
                "gamma bins per decade must be positive".to_owned(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaCheck {
    /// `intermediate`, `region1` or `region2`.
    pub label: String,
    pub window: FitWindow,
    pub verdict: Option<ConstancyVerdict>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogLawResult {
    pub window: LogLawWindow,
    pub fit: Option<LogLawFit>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub run_id: String,
    pub re_theta: f64,
    pub window: Option<FitWindow>,
    pub two_layer: Option<TwoLayerOutcome>,
    pub reynolds: Option<EffectiveReynolds>,
    /// Δ above the consistency limit for a run above the Re_θ threshold.
    pub inconsistent: bool,
    pub collapse: Option<CollapseResult>,
    pub gamma: Vec<GammaCheck>,
    pub log_law: Vec<LogLawResult>,
    pub errors: Vec<StageError>,
}

impl RunReport {
    pub fn has_errors(&self) -> bool {
        !self.errors.is_empty()
    }

    pub fn log_law_kappa(&self, window: &LogLawWindow) -> Option<f64> {
        self.log_law
            .iter()
            .find(|r| r.window == *window)
            .and_then(|r| r.fit.map(|f| f.kappa))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub schema: String,
    pub version: u32,
    pub config: PipelineConfig,
    /// Sorted like [`PipelineOutput::profiles`].
    pub reports: Vec<RunReport>,
    pub table: Vec<TableRow>,
    pub load_failures: Vec<LoadFailure>,
    #[serde(skip)]
    pub profiles: Vec<VelocityProfile>,
}

impl PipelineOutput {
    /// True when any file failed to load or any run recorded a stage error.
    pub fn is_partial(&self) -> bool {
        !self.load_failures.is_empty() || self.reports.iter().any(RunReport::has_errors)
    }
}

/// Runs every stage on a single profile.
pub fn analyze_run(profile: &VelocityProfile, cfg: &PipelineConfig) -> RunReport {
    let mut report = RunReport {
        run_id: profile.run_id().to_owned(),
        re_theta: profile.re_theta(),
        window: None,
        two_layer: None,
        reynolds: None,
        inconsistent: false,
        collapse: None,
        gamma: Vec::new(),
        log_law: Vec::new(),
        errors: Vec::new(),
    };
    fn fail(report: &mut RunReport, stage: &str, e: Error) {
        report.errors.push(StageError {
            stage: stage.to_owned(),
            message: e.to_string(),
        });
    }

    match select_intermediate_window(profile, &cfg.fit) {
        Ok(w) => report.window = Some(w),
        Err(e) => fail(&mut report, "window", e),
    }

    if let Some(window) = report.window {
        match fit_two_layer(profile, &window, &cfg.fit) {
            Ok(outcome) => report.two_layer = Some(outcome),
            Err(e) => fail(&mut report, "two-layer", e),
        }
    }

    let detected = report
        .two_layer
        .as_ref()
        .and_then(TwoLayerOutcome::detected)
        .copied();
    if let Some(fit) = detected {
        match solve_ln_re(&fit.region1).and_then(|(l1, l2)| effective_reynolds(l1, l2)) {
            Ok(mut eff) => {
                if let (Some(u), Some(nu)) = (profile.u_inf(), profile.nu()) {
                    eff.lambda_scale = length_scale(&eff, u, nu).ok();
                }
                report.inconsistent = eff.is_inconsistent(profile.re_theta());
                report.reynolds = Some(eff);
            }
            Err(e) => fail(&mut report, "inversion", e),
        }
        let ln_re = cfg.collapse_ln_re.or(report.reynolds.map(|r| r.ln_re));
        if let Some(ln_re) = ln_re {
            match collapse_profile(profile, &fit.region1.window, ln_re) {
                Ok(c) => report.collapse = Some(c),
                Err(e) => fail(&mut report, "collapse", e),
            }
        }
    }

    match gamma_series(profile) {
        Ok(series) => {
            let mut windows = Vec::new();
            if let Some(w) = report.window {
                windows.push(("intermediate", w));
            }
            if let Some(fit) = detected {
                windows.push(("region1", fit.region1.window));
                windows.push(("region2", fit.region2.window));
            }
            for (label, window) in windows {
                let (verdict, error) = match constancy_check(&series, &window, cfg.constancy_tol) {
                    Ok(v) => (Some(v), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                report.gamma.push(GammaCheck {
                    label: label.to_owned(),
                    window,
                    verdict,
                    error,
                });
            }
        }
        Err(e) => fail(&mut report, "gamma", e),
    }

    for window in &cfg.log_law_windows {
        let (fit, error) = match fit_log_law_with(
            profile,
            window.m1,
            window.m0,
            cfg.fit.outer_thickness_fraction,
        ) {
            Ok(f) => (Some(f), None),
            Err(e) => (None, Some(e.to_string())),
        };
        report.log_law.push(LogLawResult {
            window: *window,
            fit,
            error,
        });
    }
    report
}

/// Analyses every profile and aggregates the coefficient table.
pub fn run_pipeline(profiles: &[VelocityProfile], cfg: &PipelineConfig) -> Result<PipelineOutput> {
    run_catalog(Catalog::from_profiles(profiles.to_vec()), cfg)
}

pub fn run_catalog(catalog: Catalog, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    cfg.validate()?;
    if catalog.profiles.is_empty() {
        return Err(Error::InvalidConfig("empty catalog".to_owned()));
    }
    let Catalog {
        mut profiles,
        failures,
    } = catalog;
    sort_profiles(&mut profiles);
    let reports: Vec<RunReport> = profiles.iter().map(|p| analyze_run(p, cfg)).collect();
    let table = build_table(reports.iter().filter_map(|r| {
        let two_layer = r.two_layer.as_ref()?.detected()?;
        Some(TableEntry {
            re_theta: r.re_theta,
            two_layer,
            reynolds: r.reynolds.as_ref()?,
        })
    }));
    Ok(PipelineOutput {
        schema: REPORT_SCHEMA.to_owned(),
        version: REPORT_VERSION,
        config: cfg.clone(),
        reports,
        table,
        load_failures: failures,
        profiles,
    })
}
