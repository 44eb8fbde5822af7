//! Schrödinger residual `‖iħ∂_tΨ - ĤΨ‖ / ‖ĤΨ‖` on a grid.

use num_complex::Complex64;

use crate::error::Result;
use crate::modes::PhysicalParams;
use crate::oracle::grid::GridSpec;
use crate::oracle::quadrature::{norm_squared, second_derivative};
use crate::states::{StateSpec, ThetaBranch, WaveFunction};

/// Time step of the difference quotient relative to `max(|t|, 1/ω)`.
pub const RELATIVE_TIME_STEP: f64 = 1e-4;

/// `ĤΨ` with `Ĥ = -ħ²/(2m0 e^{γt}) ∂²_q + m0 ω0² e^{γt} q²/2`.
pub fn apply_hamiltonian(
    params: &PhysicalParams,
    t: f64,
    samples: &[Complex64],
    grid: &GridSpec,
) -> Vec<Complex64> {
    let m = params.mass(t);
    let hbar = params.hbar();
    let kinetic = -hbar * hbar / (2.0 * m);
    let spring = 0.5 * m * params.omega0() * params.omega0();
    let d2 = second_derivative(samples, grid.dq());
    samples
        .iter()
        .zip(&d2)
        .enumerate()
        .map(|(i, (psi, lap))| {
            let q = grid.q(i);
            lap * kinetic + psi * (spring * q * q)
        })
        .collect()
}

/// `∂_tΨ` by the 4th-order central stencil, extrapolated once by Richardson.
pub fn time_derivative(wave: &WaveFunction, t: f64, grid: &GridSpec) -> Vec<Complex64> {
    let qs = grid.points();
    let scale = t.abs().max(1.0 / wave.params().omega());
    let h = RELATIVE_TIME_STEP * scale;
    let stencil = |h: f64| -> Vec<Complex64> {
        let m2 = wave.sample(t - 2.0 * h, &qs);
        let m1 = wave.sample(t - h, &qs);
        let p1 = wave.sample(t + h, &qs);
        let p2 = wave.sample(t + 2.0 * h, &qs);
        (0..qs.len())
            .map(|i| (m2[i] - m1[i] * 8.0 + p1[i] * 8.0 - p2[i]) / (12.0 * h))
            .collect()
    };
    let coarse = stencil(h);
    let fine = stencil(0.5 * h);
    coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (f * 16.0 - c) / 15.0)
        .collect()
}

/// Relative residual of an evaluator; its `Θ` branch is forced continuous.
pub fn residual_of(wave: &WaveFunction, t: f64, grid: &GridSpec) -> Result<f64> {
    let wave = wave.with_branch(ThetaBranch::Continuous);
    let params = *wave.params();
    let psi = wave.sample(t, &grid.points());
    let h_psi = apply_hamiltonian(&params, t, &psi, grid);
    let dt_psi = time_derivative(&wave, t, grid);
    let lhs: Vec<Complex64> = dt_psi
        .iter()
        .map(|d| d * Complex64::new(0.0, params.hbar()))
        .collect();
    let diff: Vec<Complex64> = lhs.iter().zip(&h_psi).map(|(a, b)| a - b).collect();
    Ok((norm_squared(&diff, grid)? / norm_squared(&h_psi, grid)?).sqrt())
}

/// Coherent `(q_c, p_c)` in `spec` are taken at `t`.
pub fn schrodinger_residual(
    params: &PhysicalParams,
    spec: &StateSpec,
    t: f64,
    grid: &GridSpec,
) -> Result<f64> {
    residual_of(&WaveFunction::new(params, spec, t), t, grid)
}
