use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wallscale::diagnostics::{average_gamma_series, gamma_series, BinSpec};
use wallscale::fitting::ols::{fit_samples, Coordinates};
use wallscale::fitting::BreakpointSearch;
use wallscale::law::{scaling_exponent, scaling_prefactor};
use wallscale::{
    collapse_profile, effective_reynolds, fit_power_law, fit_two_layer, generate_profile,
    predict_scaling_law, psi_transform, solve_ln_re, FitConfig, FitWindow, Sample, SynthSpec,
    VelocityProfile,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn power_profile(prefactor: f64, exponent: f64, lo: f64, hi: f64, n: usize) -> VelocityProfile {
    let samples = (0..n)
        .map(|i| {
            let y = (lo.ln() + (hi / lo).ln() * i as f64 / (n - 1) as f64).exp();
            Sample::new(y, prefactor * y.powf(exponent))
        })
        .collect();
    VelocityProfile::new("p", 10_000.0, samples).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn psi_inverts_the_scaling_law(ln_re in 5.0f64..20.0, lg_y in 1.0f64..5.0) {
        let y = 10f64.powf(lg_y);
        let u = predict_scaling_law(y, ln_re).unwrap();
        let psi = psi_transform(u, scaling_exponent(ln_re)).unwrap().unwrap();
        prop_assert!(rel(psi, y.ln()) < 1e-12, "psi {psi} vs ln y {}", y.ln());
    }

    #[test]
    fn scaling_law_increases_with_wall_distance(ln_re in 5.0f64..20.0, lg_y in 0.0f64..5.0) {
        let y = 10f64.powf(lg_y);
        let a = predict_scaling_law(y, ln_re).unwrap();
        let b = predict_scaling_law(y * (1.0 + 1e-6), ln_re).unwrap();
        prop_assert!(b > a);
    }

    #[test]
    fn effective_reynolds_is_symmetric(l1 in 1.0f64..30.0, l2 in 1.0f64..30.0) {
        let a = effective_reynolds(l1, l2).unwrap();
        let b = effective_reynolds(l2, l1).unwrap();
        prop_assert_eq!(a.ln_re, (l1 + l2) / 2.0);
        prop_assert_eq!(a.delta, (l2 - l1).abs() / a.ln_re);
        prop_assert_eq!(a.delta, b.delta);
        prop_assert_eq!(a.ln_re, b.ln_re);
    }

    #[test]
    fn line_fits_recover_exact_data(
        slope in -3.0f64..3.0,
        intercept in -5.0f64..5.0,
        lo in 1.0f64..100.0,
        decades in 0.5f64..3.0,
        n in 3usize..80,
    ) {
        let hi = lo * 10f64.powf(decades);
        let xs: Vec<f64> = (0..n).map(|i| (lo.ln() + (hi / lo).ln() * i as f64 / (n - 1) as f64).exp()).collect();
        // Semi-log with an offset that keeps U⁺ positive for lo ≥ 1.
        let (kslope, b) = (slope + 3.0, intercept + 20.0);
        let semi: Vec<Sample> = xs.iter().map(|&y| Sample::new(y, kslope * y.ln() + b)).collect();
        let fit = fit_samples(&semi, Coordinates::SemiLog).unwrap();
        prop_assert!((fit.slope - kslope).abs() < 1e-9);
        prop_assert!((fit.intercept - b).abs() < 1e-9 * (1.0 + b.abs()));
        let exponent = slope.abs() / 4.0 + 0.01;
        let log: Vec<Sample> = xs.iter().map(|&y| Sample::new(y, intercept.exp() * y.powf(exponent))).collect();
        let fit = fit_samples(&log, Coordinates::LogLog).unwrap();
        prop_assert!(rel(fit.slope, exponent) < 1e-10);
        prop_assert!((fit.intercept - intercept).abs() < 1e-10);
    }

    #[test]
    fn gamma_ignores_velocity_and_length_units(
        ln_re in 6.0f64..16.0,
        c in 0.01f64..100.0,
        k in 0.01f64..100.0,
        seed in any::<u64>(),
    ) {
        let mut spec = SynthSpec::new(ln_re);
        spec.noise_rel_sigma = 0.01;
        spec.seed = seed;
        spec.n_points = 60;
        let p = generate_profile(&spec).unwrap();
        let base = gamma_series(&p).unwrap();
        let scaled: Vec<Sample> = p.samples().iter().map(|s| Sample::new(k * s.y_plus, c * s.u_plus)).collect();
        let q = gamma_series(&VelocityProfile::new("q", 1.0, scaled).unwrap()).unwrap();
        for (a, b) in base.points.iter().zip(&q.points) {
            prop_assert!((a.gamma - b.gamma).abs() < 1e-9 * a.gamma.abs().max(1.0), "{} vs {}", a.gamma, b.gamma);
        }
    }

    #[test]
    fn averaging_identical_runs_is_the_identity(ln_re in 6.0f64..16.0, copies in 2usize..6) {
        let p = generate_profile(&SynthSpec::new(ln_re).single_layer()).unwrap();
        let one = gamma_series(&p).unwrap();
        let all = vec![one.clone(); copies];
        let bins = BinSpec::new(30.0, 1e4);
        let single = average_gamma_series(&[one.clone(), one], &bins).unwrap();
        let many = average_gamma_series(&all, &bins).unwrap();
        for (a, b) in single.mean_gamma.iter().zip(&many.mean_gamma) {
            match (a, b) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-15 * a.abs()),
                (None, None) => {}
                _ => prop_assert!(false, "bin population differs"),
            }
        }
        for (_, _, m) in many.populated() {
            prop_assert!((m - scaling_exponent(ln_re)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_layer_closure(ln_re in 8.0f64..14.0) {
        let p = generate_profile(&SynthSpec::new(ln_re).single_layer()).unwrap();
        let fit = fit_power_law(&p, &FitWindow::spanning(&p).unwrap()).unwrap();
        let (l1, l2) = solve_ln_re(&fit).unwrap();
        prop_assert!((l1 - ln_re).abs() < 1e-9);
        prop_assert!((l2 - ln_re).abs() < 1e-9);
    }

    #[test]
    fn window_growth_keeps_exact_exponent(lo in 30.0f64..100.0, grow in 1.0f64..20.0) {
        let p = power_profile(scaling_prefactor(11.0), scaling_exponent(11.0), 30.0, 1e4, 150);
        let w1 = FitWindow::new(lo, lo * 10.0).unwrap();
        let w2 = FitWindow::new(lo, (lo * 10.0 * grow).min(1e4)).unwrap();
        let a = fit_power_law(&p, &w1).unwrap();
        let b = fit_power_law(&p, &w2).unwrap();
        prop_assert!((a.exponent - b.exponent).abs() < 1e-12);
    }
}

#[test]
fn sample_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..50 {
        let mut spec = SynthSpec::new(rng.random_range(8.0..14.0));
        spec.noise_rel_sigma = 0.005;
        spec.seed = trial;
        let p = generate_profile(&spec).unwrap();
        let mut shuffled = p.samples().to_vec();
        shuffled.shuffle(&mut rng);
        shuffled.sort_by(|a, b| a.y_plus.total_cmp(&b.y_plus));
        let q = VelocityProfile::new(p.run_id(), p.re_theta(), shuffled).unwrap();
        let w = FitWindow::spanning(&p).unwrap();
        let cfg = FitConfig::default();
        assert_eq!(
            fit_power_law(&p, &w).unwrap(),
            fit_power_law(&q, &w).unwrap()
        );
        assert_eq!(
            fit_two_layer(&p, &w, &cfg).unwrap(),
            fit_two_layer(&q, &w, &cfg).unwrap()
        );
    }
}

#[test]
fn golden_section_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let exhaustive = FitConfig::default();
    let golden = FitConfig {
        breakpoint_search: BreakpointSearch::GoldenSection,
        ..FitConfig::default()
    };
    for trial in 0..100 {
        let ln_re = rng.random_range(8.0..14.0);
        let mut spec = SynthSpec::new(ln_re);
        spec.breakpoint_y_plus = 10f64.powf(rng.random_range(2.0..3.3));
        spec.beta = spec.alpha() + rng.random_range(0.03..0.15);
        spec.n_points = rng.random_range(60..250);
        spec.seed = trial;
        let p = generate_profile(&spec).unwrap();
        let w = FitWindow::spanning(&p).unwrap();
        let a = fit_two_layer(&p, &w, &exhaustive).unwrap();
        let b = fit_two_layer(&p, &w, &golden).unwrap();
        let (a, b) = (a.detected().unwrap(), b.detected().unwrap());
        assert!(
            (a.breakpoint_y_plus - b.breakpoint_y_plus).abs() <= 1e-9 * a.breakpoint_y_plus,
            "trial {trial}: {} vs {}",
            a.breakpoint_y_plus,
            b.breakpoint_y_plus
        );
        assert!((a.region1.exponent - b.region1.exponent).abs() < 1e-9);
        assert!((a.region2.exponent - b.region2.exponent).abs() < 1e-9);
    }
}

#[test]
fn exponent_error_bars_are_calibrated() {
    let alpha = scaling_exponent(11.0);
    let truth = power_profile(scaling_prefactor(11.0), alpha, 50.0, 2000.0, 50);
    let w = FitWindow::spanning(&truth).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut inside = 0;
    let trials = 1000;
    for _ in 0..trials {
        let noisy: Vec<Sample> = truth
            .samples()
            .iter()
            .map(|s| {
                let z: f64 = rng.sample(rand_distr::StandardNormal);
                Sample::new(s.y_plus, s.u_plus * (0.005 * z).exp())
            })
            .collect();
        let p = VelocityProfile::new("mc", 1.0, noisy).unwrap();
        let fit = fit_power_law(&p, &w).unwrap();
        if (fit.exponent - alpha).abs() <= 3.0 * fit.exponent_stderr {
            inside += 1;
        }
    }
    assert!(
        inside >= 990,
        "only {inside}/{trials} within 3 standard errors"
    );
}

#[test]
fn synthetic_noise_is_unbiased_in_log() {
    let mut spec = SynthSpec::new(11.0).single_layer();
    spec.n_points = 10_000;
    spec.noise_rel_sigma = 0.02;
    spec.seed = 99;
    let noisy = generate_profile(&spec).unwrap();
    let n = noisy.len() as f64;
    let mean: f64 = noisy
        .samples()
        .iter()
        .map(|s| (s.u_plus / spec.noiseless_u_plus(s.y_plus)).ln())
        .sum::<f64>()
        / n;
    assert!(
        mean.abs() < 3.0 * 0.02 / n.sqrt(),
        "mean log deviation {mean}"
    );
}

#[test]
fn synthetic_profiles_close_on_their_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = FitConfig::default();
    for _ in 0..50 {
        let ln_re = rng.random_range(8.0..14.0);
        let mut spec = SynthSpec::new(ln_re);
        spec.breakpoint_y_plus = 10f64.powf(rng.random_range(2.0..3.3));
        spec.beta = spec.alpha() + rng.random_range(0.03..0.15);
        let p = generate_profile(&spec).unwrap();
        let fit = *fit_two_layer(&p, &FitWindow::spanning(&p).unwrap(), &cfg)
            .unwrap()
            .detected()
            .unwrap();
        assert!((fit.region1.exponent - spec.alpha()).abs() < 1e-9);
        assert!(rel(fit.region1.prefactor, spec.prefactor()) < 1e-9);
        assert!((fit.region2.exponent - spec.beta).abs() < 1e-9);
        assert!(rel(fit.region2.prefactor, spec.region2_prefactor()) < 1e-9);
        let (l1, l2) = solve_ln_re(&fit.region1).unwrap();
        assert!((l1 - ln_re).abs() < 1e-8 && (l2 - ln_re).abs() < 1e-8);
    }
}

#[test]
fn collapse_rms_does_not_depend_on_grid_density() {
    let ln_re = 11.0;
    let rms = |n: usize| {
        let mut spec = SynthSpec::new(ln_re).single_layer();
        spec.y_plus_max = 3000.0;
        spec.n_points = n;
        let p = generate_profile(&spec).unwrap();
        collapse_profile(&p, &FitWindow::spanning(&p).unwrap(), ln_re + 0.5)
            .unwrap()
            .rms_off_bisectrix
    };
    let base = rms(200);
    for n in [150, 317, 400, 1000] {
        assert!((rms(n) - base).abs() < 1e-3, "n={n}: {} vs {base}", rms(n));
    }
}
