//! Effective Reynolds number, consistency measure and length scale.

use wallscale::effective_reynolds;
use wallscale::scaling::length_scale;

fn main() -> wallscale::Result<()> {
    // ln Re estimated separately from the prefactor and from the exponent.
    let eff = effective_reynolds(11.25, 11.38)?;
    println!(
        "ln Re = {:.3}, Delta = {:.2}%",
        eff.ln_re,
        100.0 * eff.delta
    );
    println!(
        "inconsistent at Re_theta 20000: {}",
        eff.is_inconsistent(20_000.0)
    );

    // Λ = Re ν / U with U = 10 m/s and ν = 1.5e-5 m²/s.
    let lambda = length_scale(&eff, 10.0, 1.5e-5)?;
    println!("Lambda = {:.4} m", lambda);
    Ok(())
}
