use std::fs;

use proptest::prelude::*;
use tempfile::tempdir;

use wallscale::fitting::{fit_log_law, NoTwoLayerReason};
use wallscale::io::{
    emit_outputs, load_catalog, parse_profile, run_catalog, run_pipeline, write_profile,
    CatalogOptions, EmitOptions, PipelineConfig,
};
use wallscale::{
    generate_ensemble, generate_profile, Error, Sample, SynthSpec, TwoLayerOutcome, VelocityProfile,
};

fn high_re_ensemble(n: usize) -> Vec<VelocityProfile> {
    let specs: Vec<SynthSpec> = (0..n)
        .map(|i| {
            let mut s = SynthSpec::new(10.5 + 3.0 * i as f64 / (n - 1) as f64);
            s.noise_rel_sigma = 0.001;
            s.seed = i as u64;
            s
        })
        .collect();
    generate_ensemble(&specs).unwrap()
}

fn pure_log_law() -> VelocityProfile {
    let samples = (0..200)
        .map(|i| {
            let y = 30.0 * (1e4f64 / 30.0).powf(i as f64 / 199.0);
            Sample::new(y, y.ln() / 0.41 + 5.0)
        })
        .collect();
    VelocityProfile::new("loglaw", 20_000.0, samples).unwrap()
}

#[test]
fn log_law_window_baselines() {
    let mut spec = SynthSpec::new(11.33).single_layer();
    spec.y_plus_max = 11.33f64.exp() / 4.0;
    let p = generate_profile(&spec).unwrap();
    // Reference values from an independent polyfit of the same grid.
    for (m1, kappa, b, n) in [
        (50.0, 0.38515349931919096, 4.630902705218476, 115),
        (200.0, 0.3528248309385615, 3.0451596344134897, 73),
    ] {
        let fit = fit_log_law(&p, m1, 0.15).unwrap();
        assert_eq!(fit.n_points, n, "m1={m1}");
        assert!(
            (fit.kappa - kappa).abs() < 1e-9,
            "m1={m1}: kappa {}",
            fit.kappa
        );
        assert!((fit.b_const - b).abs() < 1e-8, "m1={m1}: B {}", fit.b_const);
    }
}

#[test]
fn catalog_skips_corrupt_files() {
    let dir = tempdir().unwrap();
    for (i, p) in high_re_ensemble(3).iter().enumerate() {
        fs::write(dir.path().join(format!("run{i}.dat")), write_profile(p)).unwrap();
    }
    fs::write(
        dir.path().join("broken.dat"),
        "# re_theta = 5000\n30 12\n40 abc\n",
    )
    .unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

    let catalog = load_catalog(dir.path(), &CatalogOptions::default()).unwrap();
    assert_eq!(catalog.profiles.len(), 3);
    assert_eq!(catalog.failures.len(), 1);
    assert!(catalog.failures[0].path.ends_with("broken.dat"));
    assert!(
        catalog.failures[0].error.contains("line 3"),
        "{}",
        catalog.failures[0].error
    );

    let out = run_catalog(catalog, &PipelineConfig::default()).unwrap();
    assert!(out.is_partial());
    assert_eq!(out.table.len(), 3);
}

#[test]
fn empty_directory_is_an_error() {
    let dir = tempdir().unwrap();
    let err = load_catalog(dir.path(), &CatalogOptions::default()).unwrap_err();
    assert!(matches!(err, Error::EmptyCatalog { failures: 0, .. }));
}

#[test]
fn catalog_sorts_by_reynolds_number() {
    let dir = tempdir().unwrap();
    let profiles = high_re_ensemble(70);
    // Write in reverse so directory order disagrees with Re_θ order.
    for (i, p) in profiles.iter().rev().enumerate() {
        fs::write(dir.path().join(format!("f{i:02}.dat")), write_profile(p)).unwrap();
    }
    let catalog = load_catalog(dir.path(), &CatalogOptions::default()).unwrap();
    assert_eq!(catalog.profiles.len(), 70);
    assert!(catalog.failures.is_empty());
    assert!(catalog
        .profiles
        .windows(2)
        .all(|w| w[0].re_theta() <= w[1].re_theta()));
    assert_eq!(catalog.profiles, {
        let mut sorted = profiles.clone();
        sorted.sort_by(|a, b| a.re_theta().total_cmp(&b.re_theta()));
        sorted
    });
}

#[test]
fn high_reynolds_runs_are_consistent() {
    let out = run_pipeline(&high_re_ensemble(24), &PipelineConfig::default()).unwrap();
    assert!(!out.is_partial());
    assert_eq!(out.table.len(), 24);
    for r in &out.reports {
        assert!(
            !r.inconsistent,
            "{}: delta {:?}",
            r.run_id,
            r.reynolds.map(|e| e.delta)
        );
        assert!(r.reynolds.unwrap().delta < 0.03);
    }
}

#[test]
fn log_law_profile_has_no_two_layer_structure() {
    let out = run_pipeline(&[pure_log_law()], &PipelineConfig::default()).unwrap();
    let report = &out.reports[0];
    match report.two_layer.as_ref().unwrap() {
        TwoLayerOutcome::NotDetected(n) => assert_eq!(n.reason, NoTwoLayerReason::SmoothCurvature),
        other => panic!("expected no two-layer structure, got {other:?}"),
    }
    assert!(out.table.is_empty());
    assert!(report.reynolds.is_none() && report.collapse.is_none());
    let kappa = report.log_law[0].fit.unwrap().kappa;
    assert!((kappa - 0.41).abs() < 1e-9, "kappa {kappa}");
}

#[test]
fn table_recovers_three_known_runs() {
    // Exponents picked to resemble three moderate-Re measurements.
    let truths = [(9.4, 0.22), (11.3, 0.2), (12.5, 0.19)];
    let specs: Vec<SynthSpec> = truths
        .iter()
        .map(|&(ln_re, beta)| {
            let mut s = SynthSpec::new(ln_re);
            s.beta = beta;
            s
        })
        .collect();
    let out = run_pipeline(
        &generate_ensemble(&specs).unwrap(),
        &PipelineConfig::default(),
    )
    .unwrap();
    assert_eq!(out.table.len(), 3);
    for (row, (spec, &(ln_re, beta))) in out.table.iter().zip(specs.iter().zip(&truths)) {
        assert!((row.alpha - spec.alpha()).abs() < 1e-9);
        assert!((row.beta - beta).abs() < 1e-9);
        assert!((row.ln_re - ln_re).abs() < 1e-8);
        assert!(row.delta_percent < 1e-6);
    }
}

#[test]
fn failing_run_does_not_stop_the_others() {
    let mut profiles = high_re_ensemble(3);
    let short: Vec<Sample> = (1..=4)
        .map(|i| Sample::new(30.0 * i as f64, 10.0 + i as f64))
        .collect();
    profiles.push(VelocityProfile::new("short", 1.0, short).unwrap());
    let out = run_pipeline(&profiles, &PipelineConfig::default()).unwrap();
    assert!(out.is_partial());
    let short = out.reports.iter().find(|r| r.run_id == "short").unwrap();
    assert_eq!(short.errors[0].stage, "window");
    assert!(short.errors[0].message.contains("short"));
    assert_eq!(out.table.len(), 3);
}

#[test]
fn emitted_files_are_deterministic() {
    let profiles = high_re_ensemble(5);
    let cfg = PipelineConfig::default();
    let (a, b) = (tempdir().unwrap(), tempdir().unwrap());
    let wa = emit_outputs(
        &run_pipeline(&profiles, &cfg).unwrap(),
        a.path(),
        &EmitOptions::default(),
    )
    .unwrap();
    let wb = emit_outputs(
        &run_pipeline(&profiles, &cfg).unwrap(),
        b.path(),
        &EmitOptions::default(),
    )
    .unwrap();
    assert_eq!(wa.len(), 5 + 7);
    for (pa, pb) in wa.iter().zip(&wb) {
        assert_eq!(
            pa.strip_prefix(a.path()).unwrap(),
            pb.strip_prefix(b.path()).unwrap()
        );
        assert_eq!(
            fs::read(pa).unwrap(),
            fs::read(pb).unwrap(),
            "{}",
            pa.display()
        );
    }
}

#[test]
fn noiseless_collapse_lies_on_the_bisectrix() {
    let specs: Vec<SynthSpec> = [9.0, 11.0, 13.0]
        .iter()
        .map(|&l| SynthSpec::new(l))
        .collect();
    let out = run_pipeline(
        &generate_ensemble(&specs).unwrap(),
        &PipelineConfig::default(),
    )
    .unwrap();
    let dir = tempdir().unwrap();
    emit_outputs(&out, dir.path(), &EmitOptions::default()).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["schema"], "wallscale-report");
    let mut count = 0;
    for report in json["reports"].as_array().unwrap() {
        for p in report["collapse"]["points"].as_array().unwrap() {
            let (x, psi) = (p["ln_y_plus"].as_f64().unwrap(), p["psi"].as_f64().unwrap());
            assert!((psi - x).abs() <= 1e-9);
            count += 1;
        }
    }
    assert!(count > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profiles_survive_a_file_round_trip(
        ys in prop::collection::btree_set(1u32..10_000_000, 3..60),
        u0 in 0.5f64..10.0,
        re_theta in 100.0f64..1e5,
        u_inf in proptest::option::of(1.0f64..50.0),
    ) {
        let samples: Vec<Sample> = ys
            .iter()
            .enumerate()
            .map(|(i, &y)| Sample::new(y as f64 / 997.0, u0 + i as f64 / 7.0))
            .collect();
        let p = VelocityProfile::with_metadata("rt", re_theta, u_inf, None, None, samples).unwrap();
        prop_assert_eq!(parse_profile(&write_profile(&p)).unwrap(), p);
    }
}

#[test]
fn single_run_emits_one_plot_and_one_row() {
    let out = run_pipeline(&high_re_ensemble(2)[..1], &PipelineConfig::default()).unwrap();
    let dir = tempdir().unwrap();
    emit_outputs(&out, dir.path(), &EmitOptions::default()).unwrap();
    assert_eq!(
        fs::read_dir(dir.path().join("profiles")).unwrap().count(),
        1
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("table.csv"))
            .unwrap()
            .lines()
            .count(),
        2
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("table.txt"))
            .unwrap()
            .lines()
            .count(),
        2
    );
}

#[test]
fn corrupt_file_leaves_other_reports_unchanged() {
    let dir = tempdir().unwrap();
    for (i, p) in high_re_ensemble(4).iter().enumerate() {
        fs::write(dir.path().join(format!("run{i}.dat")), write_profile(p)).unwrap();
    }
    let cfg = PipelineConfig::default();
    let clean = run_catalog(
        load_catalog(dir.path(), &CatalogOptions::default()).unwrap(),
        &cfg,
    )
    .unwrap();
    fs::write(
        dir.path().join("bad.dat"),
        "# re_theta = 30000\n30 12\n20 13\n",
    )
    .unwrap();
    let dirty = run_catalog(
        load_catalog(dir.path(), &CatalogOptions::default()).unwrap(),
        &cfg,
    )
    .unwrap();
    assert_eq!(dirty.load_failures.len(), 1);
    assert_eq!(clean.reports, dirty.reports);
    assert_eq!(clean.table, dirty.table);
}
