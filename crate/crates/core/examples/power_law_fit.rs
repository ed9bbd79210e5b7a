//! Fit a single power law to a noisy synthetic run and invert it for ln Re.

use wallscale::{fit_power_law, generate_profile, solve_ln_re, FitWindow, SynthSpec};

fn main() -> wallscale::Result<()> {
    let mut spec = SynthSpec::new(11.0).single_layer();
    spec.noise_rel_sigma = 0.005;
    spec.seed = 1;
    let profile = generate_profile(&spec)?;

    let window = FitWindow::new(50.0, 2000.0)?;
    let fit = fit_power_law(&profile, &window)?;
    println!(
        "alpha = {:.5} ± {:.5} (true {:.5}), A = {:.4} (true {:.4}), {} points",
        fit.exponent,
        fit.exponent_stderr,
        spec.alpha(),
        fit.prefactor,
        spec.prefactor(),
        fit.n_points
    );
    let (l1, l2) = solve_ln_re(&fit)?;
    println!("ln Re from A: {l1:.3}, from alpha: {l2:.3}");
    Ok(())
}
