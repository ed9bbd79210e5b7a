//! The Reynolds-number-dependent scaling law and its collapse variable.
//!
//! The law reads `U⁺ = (ln Re / √3 + 5/2) · (y⁺)^(3 / (2 ln Re))`. Its two
//! coefficients are exposed separately because the inversion in
//! [`crate::scaling`] solves each of them for `ln Re` independently.

use std::f64::consts::LN_10;

use crate::error::{Error, Result};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Exponent `α = 3 / (2 ln Re)`.
pub fn scaling_exponent(ln_re: f64) -> f64 {
    1.5 / ln_re
}

/// Prefactor `A = ln Re / √3 + 5/2`.
pub fn scaling_prefactor(ln_re: f64) -> f64 {
    ln_re / SQRT_3 + 2.5
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

/// Evaluates the scaling law at `y_plus` for the given `ln Re`.
pub fn predict_scaling_law(y_plus: f64, ln_re: f64) -> Result<f64> {
    check_positive("y+", y_plus)?;
    check_positive("ln Re", ln_re)?;
    Ok(scaling_prefactor(ln_re) * y_plus.powf(scaling_exponent(ln_re)))
}

/// The collapse variable `ψ = (1/α) ln(2αU⁺ / (√3 + 5α))`.
///
/// Returns `Ok(None)` when the logarithm's argument is not positive or the
/// result is not finite; such points are excluded from collapse statistics
/// rather than treated as failures.
pub fn psi_transform(u_plus: f64, alpha: f64) -> Result<Option<f64>> {
    check_positive("alpha", alpha)?;
    check_positive("U+", u_plus)?;
    let arg = 2.0 * alpha * u_plus / (SQRT_3 + 5.0 * alpha);
    if !(arg > 0.0 && arg.is_finite()) {
        return Ok(None);
    }
    let psi = arg.ln() / alpha;
    Ok(psi.is_finite().then_some(psi))
}

/// Converts a natural-log intercept to base 10 (`lg A = ln A / ln 10`).
pub fn ln_to_lg(value: f64) -> f64 {
    value / LN_10
}
