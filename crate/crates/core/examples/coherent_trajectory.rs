//! A squeezed coherent state follows the classical damped orbit; its
//! energy is the classical energy plus the vacuum contribution.

use ckstates::oracle::{make_grid, moments};
use ckstates::{
    coherent_hamiltonian_expectation, coherent_trajectory, make_params, SqueezeParams, StateSpec,
    WaveFunction,
};
use num_complex::Complex64;

fn main() -> ckstates::Result<()> {
    let params = make_params(1.0, 1.2, 1.0, 1.0)?;
    let squeeze = SqueezeParams::new(0.3, 1.0)?;
    let alpha = Complex64::new(1.5, -0.5);
    let wave = WaveFunction::from_alpha(&params, &squeeze, alpha);

    println!(
        "{:>5} {:>11} {:>11} {:>11} {:>11} {:>11}",
        "t", "q_c", "<q>", "p_c", "<p>", "<H>"
    );
    for k in 0..=10 {
        let t = 0.4 * k as f64;
        let (qc, pc) = coherent_trajectory(&params, &squeeze, alpha, t);
        let spec = StateSpec::coherent(qc, pc, squeeze)?;
        let grid = make_grid(&params, &spec, t);
        let m = moments(&wave.sample(t, &grid.points()), &grid, &params, t)?;
        let energy = coherent_hamiltonian_expectation(&params, &squeeze, alpha, t);
        println!(
            "{t:>5.2} {qc:>11.7} {:>11.7} {pc:>11.7} {:>11.7} {energy:>11.7}",
            m.q, m.p
        );
    }
    Ok(())
}
