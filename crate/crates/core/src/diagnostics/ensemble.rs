//! Bin-wise averaging of Γ across runs.
//!
//! Within each log-uniform y⁺ bin, every run contributes the mean of its own
//! interior Γ values in that bin, and the bin value is the arithmetic mean over
//! contributing runs. When runs with smaller exponents extend further out, the
//! average drifts downward with y⁺ even though each run's Γ is flat.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::VelocityProfile;

use super::gamma::{gamma_series, GammaSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    pub y_plus_min: f64,
    pub y_plus_max: f64,
    pub bins_per_decade: usize,
}

impl BinSpec {
    pub fn new(y_plus_min: f64, y_plus_max: f64) -> Self {
        Self {
            y_plus_min,
            y_plus_max,
            bins_per_decade: 20,
        }
    }

    /// Edges `y_min · 10^(k / bins_per_decade)`, extended until the last edge
    /// reaches `y_max`.
    pub fn edges(&self) -> Result<Vec<f64>> {
        let (lo, hi) = (self.y_plus_min, self.y_plus_max);
        if !(lo > 0.0 && hi.is_finite() && lo < hi) || self.bins_per_decade == 0 {
            return Err(Error::InvalidConfig(format!(
                "empty bin set: [{lo}, {hi}] with {} bins per decade",
                self.bins_per_decade
            )));
        }
        let per = self.bins_per_decade as f64;
        let n_bins = ((hi / lo).log10() * per - 1e-9).ceil().max(1.0) as usize;
        Ok((0..=n_bins)
            .map(|k| lo * 10f64.powf(k as f64 / per))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaEnsemble {
    pub bin_edges: Vec<f64>,
    /// `None` for bins no run reaches.
    pub mean_gamma: Vec<Option<f64>>,
    pub run_count_per_bin: Vec<usize>,
}

impl GammaEnsemble {
    /// `(lower edge, upper edge, mean)` for every populated bin.
    pub fn populated(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.mean_gamma
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|m| (self.bin_edges[i], self.bin_edges[i + 1], m)))
    }
}

fn bin_of(edges: &[f64], y: f64) -> Option<usize> {
    let n_bins = edges.len() - 1;
    if y < edges[0] || y > edges[n_bins] {
        return None;
    }
    let i = edges.partition_point(|&e| e <= y);
    Some(i.saturating_sub(1).min(n_bins - 1))
}

pub fn average_gamma_series(series: &[GammaSeries], bins: &BinSpec) -> Result<GammaEnsemble> {
    let edges = bins.edges()?;
    let n_bins = edges.len() - 1;
    let mut sum = vec![0.0; n_bins];
    let mut count = vec![0usize; n_bins];
    let mut run_sum = vec![0.0; n_bins];
    let mut run_n = vec![0usize; n_bins];
    for s in series {
        run_sum.iter_mut().for_each(|v| *v = 0.0);
        run_n.iter_mut().for_each(|v| *v = 0);
        for p in &s.points {
            if let Some(b) = bin_of(&edges, p.y_plus) {
                run_sum[b] += p.gamma;
                run_n[b] += 1;
            }
        }
        for b in 0..n_bins {
            if run_n[b] > 0 {
                sum[b] += run_sum[b] / run_n[b] as f64;
                count[b] += 1;
            }
        }
    }
    let mean_gamma = sum
        .iter()
        .zip(&count)
        .map(|(&s, &c)| (c > 0).then(|| s / c as f64))
        .collect();
    Ok(GammaEnsemble {
        bin_edges: edges,
        mean_gamma,
        run_count_per_bin: count,
    })
}

pub fn gamma_ensemble_average(
    profiles: &[VelocityProfile],
    bins: &BinSpec,
) -> Result<GammaEnsemble> {
    if profiles.len() < 2 {
        return Err(Error::InsufficientData {
            run_id: "<ensemble>".to_owned(),
            needed: 2,
            found: profiles.len(),
        });
    }
    let series = profiles
        .iter()
        .map(gamma_series)
        .collect::<Result<Vec<_>>>()?;
    average_gamma_series(&series, bins)
}
