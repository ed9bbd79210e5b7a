//! Γ = d ln U⁺ / d ln y⁺: flat within each run, but the ensemble average
//! drifts when the exponent varies between runs.

use wallscale::diagnostics::{constancy_check, gamma_ensemble_average, gamma_series, BinSpec};
use wallscale::{generate_ensemble, FitWindow, SynthSpec};

fn main() -> wallscale::Result<()> {
    let specs: Vec<SynthSpec> = [9.0, 10.0, 11.0, 12.0, 13.0]
        .iter()
        .map(|&l| {
            let mut s = SynthSpec::new(l).single_layer();
            s.y_plus_max = l.exp() / 10.0;
            s
        })
        .collect();
    let profiles = generate_ensemble(&specs)?;
    let window = FitWindow::new(30.0, 800.0)?;
    for p in &profiles {
        let v = constancy_check(&gamma_series(p)?, &window, 0.05)?;
        println!("{}: {:?}, mean Gamma {:.4}", p.run_id(), v.verdict, v.mean);
    }
    let ensemble = gamma_ensemble_average(&profiles, &BinSpec::new(30.0, 3e4))?;
    println!("\nensemble mean Gamma by bin:");
    for (lo, hi, m) in ensemble.populated().step_by(10) {
        println!("  [{lo:8.1}, {hi:8.1}) {m:.4}");
    }
    Ok(())
}
