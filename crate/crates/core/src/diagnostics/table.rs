use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fitting::TwoLayerFit;
use crate::format::sig6;
use crate::scaling::EffectiveReynolds;

/// One row of the per-run coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub re_theta: f64,
    pub alpha: f64,
    pub a_coef: f64,
    pub beta: f64,
    pub b_coef: f64,
    pub ln_re1: f64,
    pub ln_re2: f64,
    pub ln_re: f64,
    pub delta_percent: f64,
}

pub struct TableEntry<'a> {
    pub re_theta: f64,
    pub two_layer: &'a TwoLayerFit,
    pub reynolds: &'a EffectiveReynolds,
}

impl From<TableEntry<'_>> for TableRow {
    fn from(e: TableEntry<'_>) -> Self {
        TableRow {
            re_theta: e.re_theta,
            alpha: e.two_layer.region1.exponent,
            a_coef: e.two_layer.region1.prefactor,
            beta: e.two_layer.region2.exponent,
            b_coef: e.two_layer.region2.prefactor,
            ln_re1: e.reynolds.ln_re1,
            ln_re2: e.reynolds.ln_re2,
            ln_re: e.reynolds.ln_re,
            delta_percent: 100.0 * e.reynolds.delta,
        }
    }
}

/// One row per run, sorted by Re_θ (stable for equal values).
pub fn build_table<'a>(entries: impl IntoIterator<Item = TableEntry<'a>>) -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = entries.into_iter().map(TableRow::from).collect();
    rows.sort_by(|a, b| a.re_theta.total_cmp(&b.re_theta));
    rows
}

pub const TABLE_COLUMNS: [&str; 9] = [
    "re_theta",
    "alpha",
    "A",
    "beta",
    "B",
    "ln_re1",
    "ln_re2",
    "ln_re",
    "delta_percent",
];

/// Right-aligned columns, six significant digits; Δ in percent.
pub fn render_table_text(rows: &[TableRow]) -> String {
    let header = [
        "Re_theta", "alpha", "A", "beta", "B", "ln(Re1)", "ln(Re2)", "ln(Re)", "Delta,%",
    ];
    let body: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.re_theta,
                r.alpha,
                r.a_coef,
                r.beta,
                r.b_coef,
                r.ln_re1,
                r.ln_re2,
                r.ln_re,
                r.delta_percent,
            ]
            .map(sig6)
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &mut dyn Iterator<Item = &str>, out: &mut String| {
        let parts: Vec<String> = cells.zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied(), &mut out);
    for row in &body {
        line(&mut row.iter().map(String::as_str), &mut out);
    }
    out
}

/// CSV with six significant digits; Δ stays in percent.
pub fn render_table_csv(rows: &[TableRow]) -> String {
    let mut out = TABLE_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let cells = [
            r.re_theta,
            r.alpha,
            r.a_coef,
            r.beta,
            r.b_coef,
            r.ln_re1,
            r.ln_re2,
            r.ln_re,
            r.delta_percent,
        ];
        let cells: Vec<String> = cells.iter().map(|&v| sig6(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::PowerLawFit;
    use crate::profile::FitWindow;
    use crate::scaling::{effective_reynolds, solve_ln_re};

    fn power(exponent: f64, prefactor: f64, lo: f64, hi: f64) -> PowerLawFit {
        PowerLawFit {
            exponent,
            prefactor,
            exponent_stderr: 0.0,
            prefactor_rel_stderr: 0.0,
            rms_log_residual: 0.0,
            n_points: 20,
            window: FitWindow::new(lo, hi).unwrap(),
        }
    }

    fn entry_parts(alpha: f64, a: f64, beta: f64, b: f64) -> (TwoLayerFit, EffectiveReynolds) {
        let fit = TwoLayerFit {
            region1: power(alpha, a, 30.0, 290.0),
            region2: power(beta, b, 310.0, 3000.0),
            breakpoint_y_plus: 300.0,
            total_sse_log: 0.0,
        };
        let (l1, l2) = solve_ln_re(&fit.region1).unwrap();
        (fit, effective_reynolds(l1, l2).unwrap())
    }

    #[test]
    fn first_tabulated_row_renders_within_rounding() {
        let (fit, eff) = entry_parts(0.157, 7.84, 0.226, 5.32);
        let rows = build_table([TableEntry {
            re_theta: 2532.0,
            two_layer: &fit,
            reynolds: &eff,
        }]);
        let r = rows[0];
        assert_eq!(
            (r.alpha, r.a_coef, r.beta, r.b_coef),
            (0.157, 7.84, 0.226, 5.32)
        );
        assert!((r.ln_re1 - 9.24).abs() <= 0.02);
        assert!((r.ln_re2 - 9.57).abs() <= 0.05);
        assert!((r.ln_re - 9.4).abs() <= 0.05);
        assert!((r.delta_percent - 3.4).abs() <= 0.3);
        let text = render_table_text(&rows);
        let last = text.lines().nth(1).unwrap();
        let cells: Vec<&str> = last.split_whitespace().collect();
        assert_eq!(&cells[..5], &["2532", "0.157", "7.84", "0.226", "5.32"]);
        assert_eq!(cells[5], "9.24915");
        assert_eq!(cells[8], sig6(r.delta_percent));
        // Rows satisfy the inversion identities exactly when built from unrounded values.
        assert!((r.ln_re - 0.5 * (r.ln_re1 + r.ln_re2)).abs() < 1e-9);
        assert!((r.delta_percent / 100.0 - (r.ln_re2 - r.ln_re1).abs() / r.ln_re).abs() < 1e-9);
    }

    #[test]
    fn empty_and_ordering() {
        assert!(build_table(std::iter::empty()).is_empty());
        let (f1, e1) = entry_parts(0.120, 9.74, 0.177, 6.24);
        let (f2, e2) = entry_parts(0.157, 7.84, 0.226, 5.32);
        let rows = build_table([
            TableEntry {
                re_theta: 26_612.0,
                two_layer: &f1,
                reynolds: &e1,
            },
            TableEntry {
                re_theta: 2532.0,
                two_layer: &f2,
                reynolds: &e2,
            },
        ]);
        assert_eq!(rows[0].re_theta, 2532.0);
        assert_eq!(rows[1].re_theta, 26_612.0);
        let csv = render_table_csv(&rows);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().starts_with("26612,0.12,9.74,"));
    }
}
