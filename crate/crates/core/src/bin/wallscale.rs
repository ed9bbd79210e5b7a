//! Command-line front end. Exit status: 0 success, 1 partial (some files or
//! stages failed), 2 fatal.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use wallscale::diagnostics::{
    gamma_ensemble_average, gamma_series, render_table_csv, render_table_text, BinSpec,
};
use wallscale::format::sig6;
use wallscale::io::{
    emit_outputs, load_catalog, load_profile, run_catalog, write_profile, Catalog, CatalogOptions,
    EmitOptions, LogLawWindow, PipelineConfig, PipelineOutput, Units, DATA_DIR_ENV,
};
use wallscale::scaling::pooled_rms;
use wallscale::{generate_ensemble, Error, SynthSpec, TwoLayerOutcome};

#[derive(Parser)]
#[command(
    name = "wallscale",
    version,
    about = "Two-layer power-law analysis of boundary-layer profiles"
)]
struct Cli {
    /// TOML file with `[pipeline]`, `[catalog]` and `[emit]` tables.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Where files are written (`report`, `synth`); other commands also
    /// save their stdout there when it is given.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// File-name glob for directory inputs (overrides the config).
    #[arg(long, global = true)]
    pattern: Option<String>,
    /// Zero-based column holding y⁺ (or y with `--units raw`).
    #[arg(long, global = true)]
    y_column: Option<usize>,
    /// Zero-based column holding U⁺ (or U with `--units raw`).
    #[arg(long, global = true)]
    u_column: Option<usize>,
    /// `wall` or `raw`; overrides each file's `units` header.
    #[arg(long, global = true)]
    units: Option<Units>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
struct Input {
    /// Profile file or directory of profile files.
    #[arg(env = DATA_DIR_ENV)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Two-layer power-law fit and ln Re inversion per run.
    Fit(Input),
    /// Coefficient table over all runs with a two-layer structure.
    Table(Input),
    /// ψ collapse onto the bisectrix.
    Collapse {
        #[command(flatten)]
        input: Input,
        /// Use this ln Re for every run instead of each run's estimate.
        #[arg(long)]
        ln_re: Option<f64>,
    },
    /// Γ constancy checks and the ensemble average.
    Gamma(Input),
    /// Log-law fits for each window.
    Loglaw {
        #[command(flatten)]
        input: Input,
        /// Window as `M1:M0` (y⁺ lower limit : fraction of the outer thickness); repeatable.
        #[arg(long = "window", value_parser = parse_window)]
        windows: Vec<LogLawWindow>,
    },
    /// Write synthetic two-layer profiles to --out-dir.
    Synth(SynthArgs),
    /// Full pipeline; writes every output file to --out-dir.
    Report(Input),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 11.0)]
    ln_re: f64,
    /// Spread runs evenly up to this ln Re.
    #[arg(long)]
    ln_re_max: Option<f64>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 300.0)]
    breakpoint: f64,
    /// β − α.
    #[arg(long, default_value_t = 0.06)]
    beta_offset: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, default_value_t = 30.0)]
    y_min: f64,
    #[arg(long, default_value_t = 1e4)]
    y_max: f64,
    /// Relative lognormal noise.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sublayer: bool,
}

fn parse_window(s: &str) -> Result<LogLawWindow, String> {
    let (m1, m0) = s.split_once(':').ok_or("expected M1:M0")?;
    let m1 = m1.trim().parse().map_err(|e| format!("bad M1: {e}"))?;
    let m0 = m0.trim().parse().map_err(|e| format!("bad M0: {e}"))?;
    Ok(LogLawWindow { m1, m0 })
}

#[derive(Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    pipeline: PipelineConfig,
    catalog: CatalogOptions,
    emit: EmitOptions,
}

fn load_config(cli: &Cli) -> Result<FileConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            toml::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    if let Some(p) = &cli.pattern {
        cfg.catalog.pattern = p.clone();
    }
    let parse = &mut cfg.catalog.parse;
    parse.y_column = cli.y_column.unwrap_or(parse.y_column);
    parse.u_column = cli.u_column.unwrap_or(parse.u_column);
    parse.units = cli.units.or(parse.units);
    cfg.pipeline.validate()?;
    Ok(cfg)
}

fn load_input(path: &Path, opts: &CatalogOptions) -> Result<Catalog, Error> {
    if path.is_dir() {
        load_catalog(path, opts)
    } else {
        Ok(Catalog::from_profiles(vec![load_profile(
            path,
            &opts.parse,
        )?]))
    }
}

fn json_string(value: &impl Serialize) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::InvalidConfig(format!("serialisation failed: {e}")))
}

fn join(fields: &[String], format: Format) -> String {
    fields.join(if format == Format::Csv { "," } else { " " })
}

fn render_fit(out: &PipelineOutput, format: Format) -> Result<String, Error> {
    if format == Format::Json {
        let runs: Vec<_> = out
            .reports
            .iter()
            .map(|r| {
                json!({
                    "run_id": r.run_id, "re_theta": r.re_theta, "window": r.window,
                    "two_layer": r.two_layer, "reynolds": r.reynolds,
                    "inconsistent": r.inconsistent, "errors": r.errors,
                })
            })
            .collect();
        return json_string(&runs);
    }
    let head = [
        "run_id",
        "re_theta",
        "status",
        "alpha",
        "A",
        "beta",
        "B",
        "breakpoint",
        "ln_re",
        "delta_pct",
    ];
    let mut s = join(&head.map(String::from), format) + "\n";
    for r in &out.reports {
        let mut row = vec![r.run_id.clone(), sig6(r.re_theta)];
        match (&r.two_layer, &r.reynolds) {
            (Some(TwoLayerOutcome::Detected(f)), eff) => {
                row.push(if r.inconsistent { "inconsistent" } else { "ok" }.to_owned());
                for v in [
                    f.region1.exponent,
                    f.region1.prefactor,
                    f.region2.exponent,
                    f.region2.prefactor,
                    f.breakpoint_y_plus,
                ] {
                    row.push(sig6(v));
                }
                row.push(eff.map_or("nan".into(), |e| sig6(e.ln_re)));
                row.push(eff.map_or("nan".into(), |e| sig6(100.0 * e.delta)));
            }
            (Some(TwoLayerOutcome::NotDetected(n)), _) => {
                row.push(format!(
                    "no-two-layer({})",
                    serde_json::to_value(n.reason)
                        .unwrap()
                        .as_str()
                        .unwrap_or("?")
                ));
                row.extend(std::iter::repeat_n("nan".to_owned(), 7));
            }
            (None, _) => {
                row.push("failed".to_owned());
                row.extend(std::iter::repeat_n("nan".to_owned(), 7));
            }
        }
        s += &(join(&row, format) + "\n");
    }
    Ok(s)
}

fn render_collapse(out: &PipelineOutput, format: Format) -> Result<String, Error> {
    let results: Vec<_> = out
        .reports
        .iter()
        .filter_map(|r| r.collapse.clone())
        .collect();
    let pooled = pooled_rms(&results);
    match format {
        Format::Json => {
            let runs: Vec<_> = out
                .reports
                .iter()
                .filter(|r| r.collapse.is_some())
                .map(|r| json!({ "run_id": r.run_id, "re_theta": r.re_theta, "collapse": r.collapse }))
                .collect();
            json_string(&json!({ "pooled_rms": pooled, "runs": runs }))
        }
        Format::Csv => {
            let mut s = String::from("run_id,ln_y_plus,psi\n");
            for r in &out.reports {
                for p in r.collapse.iter().flat_map(|c| &c.points) {
                    let _ = writeln!(s, "{},{},{}", r.run_id, sig6(p.ln_y_plus), sig6(p.psi));
                }
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::from("run_id re_theta points excluded rms\n");
            for r in &out.reports {
                if let Some(c) = &r.collapse {
                    let _ = writeln!(
                        s,
                        "{} {} {} {} {}",
                        r.run_id,
                        sig6(r.re_theta),
                        c.points.len(),
                        c.n_excluded,
                        sig6(c.rms_off_bisectrix)
                    );
                }
            }
            let _ = writeln!(s, "pooled rms: {}", pooled.map_or("n/a".into(), sig6));
            Ok(s)
        }
    }
}

fn render_gamma(out: &PipelineOutput, format: Format) -> Result<String, Error> {
    let ensemble = if out.profiles.len() >= 2 {
        let series = out
            .profiles
            .iter()
            .map(gamma_series)
            .collect::<Result<Vec<_>, _>>()?;
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
        let bins = BinSpec {
            bins_per_decade: out.config.gamma_bins_per_decade,
            ..BinSpec::new(lo, hi)
        };
        Some(gamma_ensemble_average(&out.profiles, &bins)?)
    } else {
        None
    };
    if format == Format::Json {
        let checks: Vec<_> = out
            .reports
            .iter()
            .map(|r| json!({ "run_id": r.run_id, "checks": r.gamma }))
            .collect();
        return json_string(&json!({ "runs": checks, "ensemble": ensemble }));
    }
    let head = [
        "run_id", "window", "lo", "hi", "verdict", "mean", "stddev", "points",
    ];
    let mut s = join(&head.map(String::from), format) + "\n";
    for r in &out.reports {
        for c in &r.gamma {
            let mut row = vec![
                r.run_id.clone(),
                c.label.clone(),
                sig6(c.window.lo_y_plus),
                sig6(c.window.hi_y_plus),
            ];
            match (&c.verdict, &c.error) {
                (Some(v), _) => {
                    row.push(
                        serde_json::to_value(v.verdict)
                            .unwrap()
                            .as_str()
                            .unwrap_or("?")
                            .to_owned(),
                    );
                    row.extend([sig6(v.mean), sig6(v.stddev), v.n_points.to_string()]);
                }
                (None, _) => row.extend(["n/a", "nan", "nan", "0"].map(String::from)),
            }
            s += &(join(&row, format) + "\n");
        }
    }
    if let (Some(e), Format::Text) = (&ensemble, format) {
        s += "\nensemble mean gamma\nbin_lo bin_hi mean\n";
        for (lo, hi, m) in e.populated() {
            let _ = writeln!(s, "{} {} {}", sig6(lo), sig6(hi), sig6(m));
        }
    }
    Ok(s)
}

fn render_loglaw(out: &PipelineOutput, format: Format) -> Result<String, Error> {
    if format == Format::Json {
        let runs: Vec<_> = out
            .reports
            .iter()
            .map(|r| json!({ "run_id": r.run_id, "re_theta": r.re_theta, "log_law": r.log_law }))
            .collect();
        return json_string(&runs);
    }
    let mut head = vec!["run_id".to_owned(), "re_theta".to_owned()];
    for w in &out.config.log_law_windows {
        head.push(format!("kappa_{}", w.label()));
        head.push(format!("B_{}", w.label()));
    }
    let mut s = join(&head, format) + "\n";
    for r in &out.reports {
        let mut row = vec![r.run_id.clone(), sig6(r.re_theta)];
        for l in &r.log_law {
            match &l.fit {
                Some(f) => row.extend([sig6(f.kappa), sig6(f.b_const)]),
                None => row.extend(["nan".to_owned(), "nan".to_owned()]),
            }
        }
        s += &(join(&row, format) + "\n");
    }
    Ok(s)
}

fn synth(args: &SynthArgs, dir: &Path) -> Result<Vec<PathBuf>, Error> {
    if args.count == 0 {
        return Err(Error::InvalidConfig("count must be at least 1".to_owned()));
    }
    let hi = args.ln_re_max.unwrap_or(args.ln_re);
    let specs: Vec<SynthSpec> = (0..args.count)
        .map(|i| {
            let t = if args.count > 1 {
                i as f64 / (args.count - 1) as f64
            } else {
                0.0
            };
            let mut s = SynthSpec::new(args.ln_re + t * (hi - args.ln_re));
            s.breakpoint_y_plus = args.breakpoint;
            s.beta = s.alpha() + args.beta_offset;
            s.n_points = args.points;
            s.y_plus_min = args.y_min;
            s.y_plus_max = args.y_max;
            s.noise_rel_sigma = args.noise;
            s.seed = args.seed + i as u64;
            s.include_sublayer = args.sublayer;
            s
        })
        .collect();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for p in generate_ensemble(&specs)? {
        let path = dir.join(format!("{}.dat", p.run_id()));
        fs::write(&path, write_profile(&p)).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let cfg = load_config(cli)?;
    let input = match &cli.command {
        Command::Synth(args) => {
            let dir = cli.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            for path in synth(args, &dir)? {
                println!("{}", path.display());
            }
            return Ok(false);
        }
        Command::Fit(i) | Command::Table(i) | Command::Gamma(i) | Command::Report(i) => i,
        Command::Collapse { input, .. } | Command::Loglaw { input, .. } => input,
    };
    let mut pipeline = cfg.pipeline.clone();
    match &cli.command {
        Command::Collapse { ln_re: Some(l), .. } => pipeline.collapse_ln_re = Some(*l),
        Command::Loglaw { windows, .. } if !windows.is_empty() => {
            pipeline.log_law_windows = windows.clone()
        }
        _ => {}
    }
    let out = run_catalog(load_input(&input.input, &cfg.catalog)?, &pipeline)?;
    for f in &out.load_failures {
        eprintln!("warning: skipped {}: {}", f.path.display(), f.error);
    }
    for r in &out.reports {
        for e in &r.errors {
            eprintln!("warning: {} [{}]: {}", r.run_id, e.stage, e.message);
        }
    }

    let (name, text) = match &cli.command {
        Command::Report(_) => {
            let dir = cli
                .out_dir
                .clone()
                .unwrap_or_else(|| PathBuf::from("wallscale-out"));
            let written = emit_outputs(&out, &dir, &cfg.emit)?;
            println!("wrote {} files to {}", written.len(), dir.display());
            return Ok(out.is_partial());
        }
        Command::Fit(_) => ("fit", render_fit(&out, cli.format)?),
        Command::Table(_) => (
            "table",
            match cli.format {
                Format::Text => render_table_text(&out.table),
                Format::Csv => render_table_csv(&out.table),
                Format::Json => json_string(&out.table)?,
            },
        ),
        Command::Collapse { .. } => ("collapse", render_collapse(&out, cli.format)?),
        Command::Gamma(_) => ("gamma", render_gamma(&out, cli.format)?),
        Command::Loglaw { .. } => ("loglaw", render_loglaw(&out, cli.format)?),
        Command::Synth(_) => unreachable!(),
    };
    print!("{text}");
    if let Some(dir) = &cli.out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(format!("{name}.{}", cli.format.extension()));
        fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(out.is_partial())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
