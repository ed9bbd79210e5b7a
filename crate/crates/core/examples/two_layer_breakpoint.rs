//! Locate the breakpoint between the two power-law layers, and show that a
//! pure log law yields no two-layer structure.

use wallscale::{
    fit_two_layer, generate_profile, select_intermediate_window, FitConfig, Sample, SynthSpec,
    TwoLayerOutcome, VelocityProfile,
};

fn report(profile: &VelocityProfile, cfg: &FitConfig) -> wallscale::Result<()> {
    let window = select_intermediate_window(profile, cfg)?;
    match fit_two_layer(profile, &window, cfg)? {
        TwoLayerOutcome::Detected(f) => println!(
            "{}: alpha = {:.4}, beta = {:.4}, breakpoint y+ = {:.1}",
            profile.run_id(),
            f.region1.exponent,
            f.region2.exponent,
            f.breakpoint_y_plus
        ),
        TwoLayerOutcome::NotDetected(n) => {
            println!(
                "{}: no two-layer structure ({:?})",
                profile.run_id(),
                n.reason
            )
        }
    }
    Ok(())
}

fn main() -> wallscale::Result<()> {
    let cfg = FitConfig::default();
    let mut spec = SynthSpec::new(10.0);
    spec.breakpoint_y_plus = 500.0;
    spec.noise_rel_sigma = 0.002;
    spec.run_id = "two-layer".into();
    report(&generate_profile(&spec)?, &cfg)?;

    let samples = (0..200)
        .map(|i| {
            let y = 30.0 * (1e4f64 / 30.0).powf(i as f64 / 199.0);
            Sample::new(y, y.ln() / 0.41 + 5.0)
        })
        .collect();
    report(&VelocityProfile::new("log-law", 20_000.0, samples)?, &cfg)
}
