//! Two independent power laws joined at a breakpoint.
//!
//! For every admissible split of the in-window samples, both sides are fitted
//! by OLS in `(ln y⁺, ln U⁺)` and the split with the smallest total SSE wins.
//! Splits whose SSE differs from the running best by less than a small
//! fraction of the window's total sum of squares count as ties, and ties go to
//! the smaller y⁺.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::ols::{fit_line, quadratic_sse, Coordinates, LineFit};
use crate::fitting::power_law::PowerLawFit;
use crate::fitting::{BreakpointSearch, FitConfig};
use crate::profile::{FitWindow, Sample, VelocityProfile};

/// Relative SSE tolerance below which two splits are considered tied.
const TIE_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLayerFit {
    /// Layer adjacent to the viscous sublayer.
    pub region1: PowerLawFit,
    /// Layer adjacent to the free stream.
    pub region2: PowerLawFit,
    /// Intersection of the two fitted lines, clamped to the gap between the
    /// last region-I sample and the first region-II sample.
    pub breakpoint_y_plus: f64,
    pub total_sse_log: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoTwoLayerReason {
    /// The best split's slopes differ by less than `min_slope_gap`.
    SlopeGapTooSmall,
    /// A single parabola describes the window at least as well as two lines.
    SmoothCurvature,
}

/// Diagnostics for a window in which no two-layer structure was found.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoTwoLayer {
    pub reason: NoTwoLayerReason,
    pub slope_gap: f64,
    pub split_y_plus: f64,
    pub total_sse_log: f64,
    pub quadratic_sse_log: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TwoLayerOutcome {
    Detected(TwoLayerFit),
    NotDetected(NoTwoLayer),
}

impl TwoLayerOutcome {
    pub fn detected(&self) -> Option<&TwoLayerFit> {
        match self {
            TwoLayerOutcome::Detected(fit) => Some(fit),
            TwoLayerOutcome::NotDetected(_) => None,
        }
    }
}

struct Split {
    /// Index of the first region-II sample.
    k: usize,
    left: LineFit,
    right: LineFit,
}

impl Split {
    fn sse(&self) -> f64 {
        self.left.sse + self.right.sse
    }
}

struct SplitSearch<'a> {
    xs: &'a [f64],
    ys: &'a [f64],
    min_k: usize,
    max_k: usize,
    tie: f64,
}

impl SplitSearch<'_> {
    fn eval(&self, k: usize) -> Result<Split> {
        Ok(Split {
            k,
            left: fit_line(&self.xs[..k], &self.ys[..k])?,
            right: fit_line(&self.xs[k..], &self.ys[k..])?,
        })
    }

    /// Strictly better than `best` beyond the tie tolerance.
    fn improves(&self, candidate: f64, best: f64) -> bool {
        candidate < best - self.tie
    }

    fn scan(&self, lo: usize, hi: usize) -> Result<Split> {
        let mut best = self.eval(lo)?;
        for k in lo + 1..=hi {
            let s = self.eval(k)?;
            if self.improves(s.sse(), best.sse()) {
                best = s;
            }
        }
        Ok(best)
    }

    fn exhaustive(&self) -> Result<Split> {
        self.scan(self.min_k, self.max_k)
    }

    /// Golden-section bracketing on the integer split index, then an
    /// exhaustive scan of the final bracket widened by two on each side.
    fn golden(&self) -> Result<Split> {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let mut cache: Vec<Option<f64>> = vec![None; self.max_k + 1];
        let mut sse_at = |k: usize| -> Result<f64> {
            if let Some(v) = cache[k] {
                return Ok(v);
            }
            let v = self.eval(k)?.sse();
            cache[k] = Some(v);
            Ok(v)
        };
        let (mut a, mut b) = (self.min_k, self.max_k);
        while b - a > 3 {
            let step = ((b - a) as f64 * INV_PHI).ceil() as usize;
            let c = b - step;
            let d = a + step;
            let (c, d) = if c < d { (c, d) } else { (a + 1, b - 1) };
            if sse_at(c)? <= sse_at(d)? + self.tie {
                b = d;
            } else {
                a = c;
            }
        }
        let lo = a.saturating_sub(2).max(self.min_k);
        let hi = (b + 2).min(self.max_k);
        self.scan(lo, hi)
    }
}

/// Fits two independent power laws inside `window`.
///
/// Returns [`TwoLayerOutcome::NotDetected`] when the best split does not show
/// two distinct layers; that outcome is a finding, not an error.
pub fn fit_two_layer(
    profile: &VelocityProfile,
    window: &FitWindow,
    cfg: &FitConfig,
) -> Result<TwoLayerOutcome> {
    cfg.validate()?;
    let samples = profile.samples_in(window);
    let m = cfg.min_points_per_segment;
    let n = samples.len();
    if n < 2 * m {
        return Err(Error::InsufficientData {
            run_id: profile.run_id().to_owned(),
            needed: 2 * m,
            found: n,
        });
    }
    let (xs, ys) = Coordinates::LogLog.map_all(samples);
    let y_mean = ys.iter().sum::<f64>() / n as f64;
    let sst: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let search = SplitSearch {
        xs: &xs,
        ys: &ys,
        min_k: m,
        max_k: n - m,
        tie: TIE_TOLERANCE * sst.max(f64::MIN_POSITIVE),
    };
    let best = match cfg.breakpoint_search {
        BreakpointSearch::Exhaustive => search.exhaustive()?,
        BreakpointSearch::GoldenSection => search.golden()?,
    };

    let total_sse_log = best.sse();
    let slope_gap = best.right.slope - best.left.slope;
    let split_y_plus = breakpoint(&best, samples, &xs);
    let quad = quadratic_sse(&xs, &ys)?;
    let reason = if slope_gap.abs() < cfg.min_slope_gap {
        Some(NoTwoLayerReason::SlopeGapTooSmall)
    } else if cfg.reject_smooth_curvature && quad <= total_sse_log {
        Some(NoTwoLayerReason::SmoothCurvature)
    } else {
        None
    };
    if let Some(reason) = reason {
        return Ok(TwoLayerOutcome::NotDetected(NoTwoLayer {
            reason,
            slope_gap,
            split_y_plus,
            total_sse_log,
            quadratic_sse_log: quad,
        }));
    }

    let (left, right) = samples.split_at(best.k);
    Ok(TwoLayerOutcome::Detected(TwoLayerFit {
        region1: PowerLawFit::from_line(&best.left, span(left)?)?,
        region2: PowerLawFit::from_line(&best.right, span(right)?)?,
        breakpoint_y_plus: split_y_plus,
        total_sse_log,
    }))
}

fn span(samples: &[Sample]) -> Result<FitWindow> {
    FitWindow::new(samples[0].y_plus, samples[samples.len() - 1].y_plus)
}

fn breakpoint(split: &Split, samples: &[Sample], xs: &[f64]) -> f64 {
    let lo = xs[split.k - 1];
    let hi = xs[split.k];
    let ds = split.left.slope - split.right.slope;
    let x = if ds != 0.0 {
        (split.right.intercept - split.left.intercept) / ds
    } else {
        f64::NAN
    };
    let x = if x.is_finite() {
        x.clamp(lo, hi)
    } else {
        0.5 * (lo + hi)
    };
    x.exp()
        .clamp(samples[split.k - 1].y_plus, samples[split.k].y_plus)
}
