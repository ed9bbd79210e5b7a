//! Ordinary least squares on a straight line, in whichever coordinates the
//! caller maps samples into.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::Sample;

/// Coordinate transform applied to `(y⁺, U⁺)` before the line fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coordinates {
    /// `(ln y⁺, ln U⁺)`: power laws are straight lines.
    LogLog,
    /// `(ln y⁺, U⁺)`: log laws are straight lines.
    SemiLog,
}

impl Coordinates {
    pub fn map(self, s: &Sample) -> (f64, f64) {
        match self {
            Coordinates::LogLog => (s.y_plus.ln(), s.u_plus.ln()),
            Coordinates::SemiLog => (s.y_plus.ln(), s.u_plus),
        }
    }

    pub fn map_all(self, samples: &[Sample]) -> (Vec<f64>, Vec<f64>) {
        samples.iter().map(|s| self.map(s)).unzip()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub intercept_stderr: f64,
    /// Sum of squared residuals.
    pub sse: f64,
    pub n: usize,
}

impl LineFit {
    pub fn rms_residual(&self) -> f64 {
        (self.sse / self.n as f64).sqrt()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Two-pass OLS of `ys` on `xs`. Standard errors use `n - 2` degrees of
/// freedom and are zero when `n == 2`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    assert_eq!(xs.len(), ys.len(), "abscissa and ordinate lengths differ");
    let n = xs.len();
    if n < 2 {
        return Err(Error::DegenerateAbscissa);
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - x_mean;
        sxx += dx * dx;
        sxy += dx * (y - y_mean);
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateAbscissa);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let (slope_stderr, intercept_stderr) = if n > 2 {
        let s2 = sse / (nf - 2.0);
        (
            (s2 / sxx).sqrt(),
            (s2 * (1.0 / nf + x_mean * x_mean / sxx)).sqrt(),
        )
    } else {
        (0.0, 0.0)
    };
    Ok(LineFit {
        slope,
        intercept,
        slope_stderr,
        intercept_stderr,
        sse,
        n,
    })
}

pub fn fit_samples(samples: &[Sample], coords: Coordinates) -> Result<LineFit> {
    let (xs, ys) = coords.map_all(samples);
    fit_line(&xs, &ys)
}

/// Residual sum of squares of the least-squares parabola through the points.
///
/// Abscissae are centred and scaled to `[-1, 1]` and the 3×3 normal equations
/// are solved by Gaussian elimination with partial pivoting.
pub fn quadratic_sse(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len();
    if n < 3 {
        return Err(Error::DegenerateAbscissa);
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return Err(Error::DegenerateAbscissa);
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let ts: Vec<f64> = xs.iter().map(|x| (x - mid) / half).collect();

    let mut m = [[0.0f64; 4]; 3];
    for (t, y) in ts.iter().zip(ys) {
        let basis = [1.0, *t, t * t];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += basis[r] * basis[c];
            }
            m[r][3] += basis[r] * y;
        }
    }
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        if m[col][col].abs() < 1e-300 {
            return Err(Error::DegenerateAbscissa);
        }
        for r in col + 1..3 {
            let f = m[r][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
        }
    }
    let mut coef = [0.0f64; 3];
    for r in (0..3).rev() {
        let tail: f64 = (r + 1..3).map(|c| m[r][c] * coef[c]).sum();
        coef[r] = (m[r][3] - tail) / m[r][r];
    }
    Ok(ts
        .iter()
        .zip(ys)
        .map(|(t, y)| {
            let r = y - (coef[0] + coef[1] * t + coef[2] * t * t);
            r * r
        })
        .sum())
}
