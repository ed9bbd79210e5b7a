//! Evaluate the scaling law and its ψ transform at a few Reynolds numbers.

use wallscale::law::{scaling_exponent, scaling_prefactor};
use wallscale::{predict_scaling_law, psi_transform};

fn main() -> wallscale::Result<()> {
    for ln_re in [9.0, 11.0, 13.0] {
        let alpha = scaling_exponent(ln_re);
        println!(
            "ln Re = {ln_re}: A = {:.4}, alpha = {alpha:.4}",
            scaling_prefactor(ln_re)
        );
        for y in [30.0, 100.0, 1000.0] {
            let u = predict_scaling_law(y, ln_re)?;
            let psi = psi_transform(u, alpha)?.expect("defined on the law itself");
            println!(
                "  y+ = {y:>6}: U+ = {u:.4}, psi = {psi:.6} (ln y+ = {:.6})",
                y.ln()
            );
        }
    }
    Ok(())
}
