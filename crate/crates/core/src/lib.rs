//! Analysis of zero-pressure-gradient turbulent boundary-layer mean-velocity
//! profiles in wall units.
//!
//! The crate fits the two-layer power-law structure
//! `U⁺ = A (y⁺)^α` / `U⁺ = B (y⁺)^β` in the intermediate region, inverts the
//! first layer into an effective Reynolds number through the scaling law
//! `U⁺ = (ln Re / √3 + 5/2) (y⁺)^(3 / (2 ln Re))`, and runs the tests that
//! separate that description from a universal log law:
//!
//! - [`scaling::collapse_profile`]: every point should land on `ψ = ln y⁺`;
//! - [`diagnostics::gamma_series`]: the log-derivative Γ is flat per run, but
//!   its ensemble average drifts when the exponent varies between runs;
//! - [`fitting::fit_log_law`]: κ depends on the fit window when the data follow
//!   a power law.
//!
//! [`synth`] produces profiles with known ground truth, [`io`] reads and
//! writes profile files, runs the whole chain over a catalog, and emits
//! plot-ready column files.
//!
//! All logarithms are natural internally; base-10 values appear only in
//! output meant for log-log plots.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod fitting;
pub mod format;
pub mod io;
pub mod law;
pub mod profile;
pub mod scaling;
pub mod synth;

pub use error::{Error, Result};
pub use fitting::{
    fit_log_law, fit_power_law, fit_two_layer, select_intermediate_window, FitConfig, LogLawFit,
    PowerLawFit, TwoLayerFit, TwoLayerOutcome,
};
pub use law::{predict_scaling_law, psi_transform};
pub use profile::{FitWindow, Sample, VelocityProfile};
pub use scaling::{
    collapse_profile, effective_reynolds, length_scale, solve_ln_re, CollapseResult,
    EffectiveReynolds,
};
pub use synth::{generate_ensemble, generate_profile, SynthSpec};
