//! Plot-ready column files, the coefficient table and the JSON report.
//!
//! Layout under the output directory:
//!
//! | file                       | columns                                                     |
//! |----------------------------|-------------------------------------------------------------|
//! | `profiles/<run_id>.dat`    | `lg_y_plus lg_u_plus lg_fit_region1 lg_fit_region2`         |
//! | `collapse.dat`             | `run_id ln_y_plus psi`                                      |
//! | `kappa.dat`                | `run_id re_theta kappa_<window>...`                         |
//! | `gamma.dat`                | `run_id y_plus gamma`                                       |
//! | `gamma_ensemble.dat`       | `bin_lo bin_hi mean_gamma runs`                             |
//! | `table.csv`, `table.txt`   | coefficient table                                           |
//! | `report.json`              | full report, schema `wallscale-report` v1                   |
//!
//! Column files use six significant digits; `report.json` keeps full
//! precision. Output is byte-identical for identical inputs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    average_gamma_series, gamma_series, render_table_csv, render_table_text, BinSpec,
};
use crate::error::{Error, Result};
use crate::format::sig6;
use crate::io::pipeline::PipelineOutput;
use crate::law::ln_to_lg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmitOptions {
    pub profile_plots: bool,
    pub collapse: bool,
    pub kappa: bool,
    pub gamma: bool,
    pub table_csv: bool,
    pub table_text: bool,
    pub json_report: bool,
}

impl Default for EmitOptions {
    fn default() -> Self {
        Self {
            profile_plots: true,
            collapse: true,
            kappa: true,
            gamma: true,
            table_csv: true,
            table_text: true,
            json_report: true,
        }
    }
}

/// File-system-safe version of a run id.
pub fn file_stem_for(run_id: &str) -> String {
    run_id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn render_profile_plot(output: &PipelineOutput, index: usize) -> String {
    let profile = &output.profiles[index];
    let report = &output.reports[index];
    let fit = report.two_layer.as_ref().and_then(|o| o.detected());
    let mut out = String::new();
    let _ = writeln!(out, "# run_id = {}", profile.run_id());
    let _ = writeln!(out, "# re_theta = {}", sig6(profile.re_theta()));
    if let Some(f) = fit {
        let _ = writeln!(out, "# alpha = {}", sig6(f.region1.exponent));
        let _ = writeln!(out, "# A = {}", sig6(f.region1.prefactor));
        let _ = writeln!(out, "# beta = {}", sig6(f.region2.exponent));
        let _ = writeln!(out, "# B = {}", sig6(f.region2.prefactor));
        let _ = writeln!(out, "# breakpoint_y_plus = {}", sig6(f.breakpoint_y_plus));
    }
    out.push_str("# lg_y_plus lg_u_plus lg_fit_region1 lg_fit_region2\n");
    for s in profile.samples() {
        let (r1, r2) = match fit {
            Some(f) => (
                ln_to_lg(f.region1.eval(s.y_plus).ln()),
                ln_to_lg(f.region2.eval(s.y_plus).ln()),
            ),
            None => (f64::NAN, f64::NAN),
        };
        let _ = writeln!(
            out,
            "{} {} {} {}",
            sig6(s.y_plus.log10()),
            sig6(s.u_plus.log10()),
            sig6(r1),
            sig6(r2)
        );
    }
    out
}

pub fn render_collapse(output: &PipelineOutput) -> String {
    let mut out = String::from("# run_id ln_y_plus psi\n");
    for r in &output.reports {
        if let Some(c) = &r.collapse {
            for p in &c.points {
                let _ = writeln!(out, "{} {} {}", r.run_id, sig6(p.ln_y_plus), sig6(p.psi));
            }
        }
    }
    out
}

pub fn render_kappa(output: &PipelineOutput) -> String {
    let windows = &output.config.log_law_windows;
    let mut out = String::from("# run_id re_theta");
    for w in windows {
        let _ = write!(out, " kappa_{}", w.label());
    }
    out.push('\n');
    for r in &output.reports {
        let _ = write!(out, "{} {}", r.run_id, sig6(r.re_theta));
        for w in windows {
            let _ = write!(out, " {}", sig6(r.log_law_kappa(w).unwrap_or(f64::NAN)));
        }
        out.push('\n');
    }
    out
}

pub fn render_gamma(output: &PipelineOutput) -> Result<(String, String)> {
    let series = output
        .profiles
        .iter()
        .filter(|p| p.len() >= 3)
        .map(gamma_series)
        .collect::<Result<Vec<_>>>()?;
    let mut runs = String::from("# run_id y_plus gamma\n");
    for s in &series {
        for p in &s.points {
            let _ = writeln!(runs, "{} {} {}", s.run_id, sig6(p.y_plus), sig6(p.gamma));
        }
    }
    let mut ensemble = String::from("# bin_lo bin_hi mean_gamma runs\n");
    let lo = series
        .iter()
        .filter_map(|s| s.points.first())
        .map(|p| p.y_plus)
        .fold(f64::INFINITY, f64::min);
    let hi = series
        .iter()
        .filter_map(|s| s.points.last())
        .map(|p| p.y_plus)
        .fold(0.0, f64::max);
    if series.len() >= 2 && lo < hi {
        let bins = BinSpec {
            y_plus_min: lo,
            y_plus_max: hi,
            bins_per_decade: output.config.gamma_bins_per_decade,
        };
        let avg = average_gamma_series(&series, &bins)?;
        for (i, m) in avg.mean_gamma.iter().enumerate() {
            if let Some(m) = m {
                let _ = writeln!(
                    ensemble,
                    "{} {} {} {}",
                    sig6(avg.bin_edges[i]),
                    sig6(avg.bin_edges[i + 1]),
                    sig6(*m),
                    avg.run_count_per_bin[i]
                );
            }
        }
    }
    Ok((runs, ensemble))
}

pub fn render_json(output: &PipelineOutput) -> Result<String> {
    let mut s = serde_json::to_string_pretty(output)
        .map_err(|e| Error::InvalidConfig(format!("report serialisation failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Writes the selected outputs under `dir` and returns the written paths.
pub fn emit_outputs(
    output: &PipelineOutput,
    dir: &Path,
    opts: &EmitOptions,
) -> Result<Vec<PathBuf>> {
    if output.reports.is_empty() {
        return Err(Error::InvalidConfig(
            "nothing to emit: no run reports".to_owned(),
        ));
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    if opts.profile_plots {
        let sub = dir.join("profiles");
        fs::create_dir_all(&sub).map_err(|e| Error::io(&sub, e))?;
        for (i, p) in output.profiles.iter().enumerate() {
            let path = sub.join(format!("{}.dat", file_stem_for(p.run_id())));
            write(path, &render_profile_plot(output, i), &mut written)?;
        }
    }
    if opts.collapse {
        write(
            dir.join("collapse.dat"),
            &render_collapse(output),
            &mut written,
        )?;
    }
    if opts.kappa {
        write(dir.join("kappa.dat"), &render_kappa(output), &mut written)?;
    }
    if opts.gamma {
        let (runs, ensemble) = render_gamma(output)?;
        write(dir.join("gamma.dat"), &runs, &mut written)?;
        write(dir.join("gamma_ensemble.dat"), &ensemble, &mut written)?;
    }
    if opts.table_csv {
        write(
            dir.join("table.csv"),
            &render_table_csv(&output.table),
            &mut written,
        )?;
    }
    if opts.table_text {
        write(
            dir.join("table.txt"),
            &render_table_text(&output.table),
            &mut written,
        )?;
    }
    if opts.json_report {
        write(dir.join("report.json"), &render_json(output)?, &mut written)?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_are_sanitised() {
        assert_eq!(file_stem_for("bl run/12"), "bl_run_12");
        assert_eq!(file_stem_for("synth-001.a"), "synth-001.a");
    }
}
