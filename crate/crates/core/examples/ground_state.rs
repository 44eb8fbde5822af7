//! The unsqueezed ground state keeps a constant uncertainty product
//! `ħσ0/2` while its width shrinks with the growing mass.

use ckstates::{
    gauss_coeffs, make_params, sigma0, theta_gamma, uncertainty_product, SqueezeParams,
};

fn main() -> ckstates::Result<()> {
    let params = make_params(1.0, 1.2, 1.0, 1.0)?;
    let angle = theta_gamma(&params);
    println!(
        "ω = {:.6}, θ_γ = {:.6}, σ0 = {:.6}",
        params.omega(),
        angle.theta,
        sigma0(&params)
    );

    println!("{:>6} {:>12} {:>12} {:>12}", "t", "Δq", "Δp", "ΔqΔp");
    for k in 0..=8 {
        let t = 0.5 * k as f64;
        let rec = uncertainty_product(&params, 0, &SqueezeParams::NONE, t)?;
        let width = gauss_coeffs(&params, &SqueezeParams::NONE, t).position_width(0);
        println!(
            "{t:>6.2} {:>12.6} {:>12.6} {:>12.9}   (σ_q from A: {width:.6})",
            rec.dq, rec.dp, rec.product
        );
    }
    Ok(())
}
