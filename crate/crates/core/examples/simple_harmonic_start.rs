//! With the special squeeze `(r0, φ0)` the state at `t = 0` is an
//! undamped oscillator eigenstate times a global phase.

use ckstates::oracle::validate::sim_wave_deviation;
use ckstates::states::BConvention;
use ckstates::{make_params, special_squeeze};

fn main() -> ckstates::Result<()> {
    let params = make_params(1.0, 1.2, 1.0, 1.0)?;
    let squeeze = special_squeeze(&params)?;
    println!("r0 = {:.6}, φ0 = {:.6}", squeeze.r(), squeeze.phi());

    let ratio = params.gamma() / (4.0 * params.omega());
    for (label, phase) in [("γ/4ω", ratio), ("atan(γ/4ω)", ratio.atan())] {
        for n in 0..=3 {
            let dev =
                sim_wave_deviation(&params, &squeeze, n, phase, BConvention::Normalizable, 513);
            println!(
                "phase {label:<11} = {phase:.6}  n={n}  max |Ψ - e^(-iφ(n+½))ψ_n| = {dev:.3e}"
            );
        }
    }
    Ok(())
}
