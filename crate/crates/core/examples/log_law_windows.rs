//! Log-law fits of a power-law profile: κ moves with the fit window.

use wallscale::{fit_log_law, generate_profile, SynthSpec};

fn main() -> wallscale::Result<()> {
    for ln_re in [9.4, 11.33, 12.5] {
        let mut spec = SynthSpec::new(ln_re).single_layer();
        spec.y_plus_max = ln_re.exp() / 4.0;
        let p = generate_profile(&spec)?;
        for m1 in [50.0, 200.0] {
            let f = fit_log_law(&p, m1, 0.15)?;
            println!(
                "ln Re {ln_re:5.2}, window [{m1}, 0.15 delta95]: kappa = {:.4}, B = {:.3} ({} points)",
                f.kappa, f.b_const, f.n_points
            );
        }
    }
    Ok(())
}
