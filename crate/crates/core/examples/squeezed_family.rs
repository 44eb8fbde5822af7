//! Uncertainty products of squeezed number states over one period.
//! Squeezing makes the product oscillate, and for damped motion it can
//! dip below `ħσ0/2`, though never below `ħ(n+½)`.

use std::f64::consts::PI;

use ckstates::{make_params, sigma0, uncertainty_product, uncertainty_time_avg, SqueezeParams};

fn main() -> ckstates::Result<()> {
    let params = make_params(1.0, 1.2, 1.0, 1.0)?;
    let floor = 0.5 * params.hbar() * sigma0(&params);
    println!("ħσ0/2 = {floor:.6}");

    for (r, phi) in [(0.0, 0.0), (0.25, 1.0), (0.5, PI), (1.0, 5.0)] {
        let squeeze = SqueezeParams::new(r, phi)?;
        for n in 0..=2 {
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for k in 0..256 {
                let t = params.half_period() * k as f64 / 256.0;
                let p = uncertainty_product(&params, n, &squeeze, t)?.product;
                lo = lo.min(p);
                hi = hi.max(p);
            }
            let avg = uncertainty_time_avg(&params, n, &squeeze, 0)?.numeric;
            println!(
                "r={r:<5} φ={phi:<8.4} n={n}  min {lo:.6}  max {hi:.6}  mean {avg:.6}  min/(ħσ0(2n+1)/2) {:.4}",
                lo / (floor * (2 * n + 1) as f64)
            );
        }
    }
    Ok(())
}
