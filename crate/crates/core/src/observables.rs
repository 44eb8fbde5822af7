//! Closed-form observables of the squeezed number states.
//!
//! With `x = 2ωt + φ`, `c = cosh 2r` and `s = sinh 2r`:
//!
//! * `⟨q²⟩ = ħ|u|²(2n+1) = ħ(2n+1)/(2m0ω e^{γt}) · (c + s cos x)`
//! * `⟨p²⟩ = ħm0²e^{2γt}|u̇|²(2n+1) = ħ(2n+1) m0 e^{γt} ω0²/(2ω) · (c − s cos(x+θ_γ))`
//!
//! so `Δq·Δp = (ħ/2) sec(θ_γ/2) √{(c + s cos x)(c − s cos(x+θ_γ))} (2n+1)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{mode_u_rphi, PhysicalParams, SqueezeParams};
use crate::states::{coherent_trajectory, MAX_HERMITE_ORDER};

/// Minimum number of samples for numerical time averages.
pub const MIN_AVERAGE_SAMPLES: usize = 2048;

/// Damping angle `θ_γ ∈ [0, π)` with `sec(θ_γ/2) = ω0/ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleGamma {
    pub theta: f64,
    pub sin: f64,
    pub cos: f64,
}

pub fn theta_gamma(params: &PhysicalParams) -> AngleGamma {
    let ratio = params.gamma() / params.omega();
    let k = 0.25 * ratio * ratio;
    let sin = ratio / (1.0 + k);
    let cos = (1.0 - k) / (1.0 + k);
    AngleGamma {
        theta: sin.atan2(cos),
        sin,
        cos,
    }
}

/// `σ0` by both routes: `sec(θ_γ/2)` and `(1 - γ²/4ω0²)^{-1/2}`.
pub fn sigma0_forms(params: &PhysicalParams) -> (f64, f64) {
    let angle = theta_gamma(params);
    let secant = 1.0 / (0.5 * angle.theta).cos();
    let g = params.gamma() / (2.0 * params.omega0());
    let direct = 1.0 / ((1.0 - g) * (1.0 + g)).sqrt();
    (secant, direct)
}

/// `σ0 = (1 - γ²/4ω0²)^{-1/2} = ω0/ω ≥ 1`.
pub fn sigma0(params: &PhysicalParams) -> f64 {
    sigma0_forms(params).1
}

/// `(c + s cos x, c − s cos(x + θ_γ))`: the squeeze dependence of `⟨q²⟩`
/// and `⟨p²⟩`.
pub fn squeeze_factors(params: &PhysicalParams, squeeze: &SqueezeParams, t: f64) -> (f64, f64) {
    let x = 2.0 * params.omega() * t + squeeze.phi();
    let two_r = 2.0 * squeeze.r();
    let (c, s) = (two_r.cosh(), two_r.sinh());
    let theta = theta_gamma(params).theta;
    (c + s * x.cos(), c - s * (x + theta).cos())
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_HERMITE_ORDER {
        Err(Error::HermiteOrder {
            n,
            max: MAX_HERMITE_ORDER,
        })
    } else {
        Ok(())
    }
}

/// `⟨q²⟩ = ħ|u_{rφ}|²(2n+1)`.
pub fn position_variance(
    params: &PhysicalParams,
    n: usize,
    squeeze: &SqueezeParams,
    t: f64,
) -> f64 {
    let mode = mode_u_rphi(params, squeeze, t);
    params.hbar() * mode.u.norm_sqr() * (2 * n + 1) as f64
}

/// `⟨p²⟩ = ħ m0² e^{2γt} |u̇_{rφ}|²(2n+1)`.
pub fn momentum_variance(
    params: &PhysicalParams,
    n: usize,
    squeeze: &SqueezeParams,
    t: f64,
) -> f64 {
    let mode = mode_u_rphi(params, squeeze, t);
    let m = params.mass(t);
    params.hbar() * m * m * mode.udot.norm_sqr() * (2 * n + 1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyRecord {
    pub dq: f64,
    pub dp: f64,
    /// `Δq·Δp` from the closed form.
    pub product: f64,
    /// `ħσ0/2`.
    pub bound: f64,
    pub t: f64,
}

impl UncertaintyRecord {
    pub fn ratio(&self) -> f64 {
        self.product / self.bound
    }
}

pub fn uncertainty_product(
    params: &PhysicalParams,
    n: usize,
    squeeze: &SqueezeParams,
    t: f64,
) -> Result<UncertaintyRecord> {
    check_order(n)?;
    let (fq, fp) = squeeze_factors(params, squeeze, t);
    let bound = 0.5 * params.hbar() * sigma0(params);
    Ok(UncertaintyRecord {
        dq: position_variance(params, n, squeeze, t).sqrt(),
        dp: momentum_variance(params, n, squeeze, t).sqrt(),
        product: bound * (fq * fp).sqrt() * (2 * n + 1) as f64,
        bound,
        t,
    })
}

/// `(ħ/2)[cosh²2r − sinh²2r cos²(2ωt+φ)]^{1/2}(2n+1)`, the undamped product.
pub fn undamped_uncertainty(hbar: f64, n: usize, squeeze: &SqueezeParams, phase: f64) -> f64 {
    let two_r = 2.0 * squeeze.r();
    let c = two_r.cosh();
    let sc = two_r.sinh() * phase.cos();
    0.5 * hbar * (c * c - sc * sc).sqrt() * (2 * n + 1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeAverage {
    /// Trapezoid average over one period `π/ω`.
    pub numeric: f64,
    /// `(ħ/2) sec(θ_γ/2)(cosh²r − (cos θ_γ/2) sinh²r)`; ground state only.
    pub closed_form: Option<f64>,
}

/// Time-averaged `Δq·Δp`; `samples` is raised to at least
/// [`MIN_AVERAGE_SAMPLES`].
pub fn uncertainty_time_avg(
    params: &PhysicalParams,
    n: usize,
    squeeze: &SqueezeParams,
    samples: usize,
) -> Result<TimeAverage> {
    check_order(n)?;
    let numeric = periodic_mean(params, samples, |t| {
        let (fq, fp) = squeeze_factors(params, squeeze, t);
        (fq * fp).sqrt()
    }) * 0.5
        * params.hbar()
        * sigma0(params)
        * (2 * n + 1) as f64;
    let closed_form = (n == 0).then(|| {
        let angle = theta_gamma(params);
        let (ch, sh) = (squeeze.r().cosh(), squeeze.r().sinh());
        0.5 * params.hbar() * sigma0(params) * (ch * ch - 0.5 * angle.cos * sh * sh)
    });
    Ok(TimeAverage {
        numeric,
        closed_form,
    })
}

/// Mean of a `π/ω`-periodic function by the trapezoid rule; for periodic
/// integrands the end points coincide, leaving a plain sample mean.
fn periodic_mean(params: &PhysicalParams, samples: usize, f: impl Fn(f64) -> f64) -> f64 {
    let samples = samples.max(MIN_AVERAGE_SAMPLES);
    let dt = params.half_period() / samples as f64;
    (0..samples).map(|k| f(k as f64 * dt)).sum::<f64>() / samples as f64
}

/// `⟨H⟩ = ħω sec²(θ_γ/2)[cosh 2r + sinh 2r sin(θ_γ/2) sin(2ωt+φ+θ_γ/2)](n+½)`.
pub fn hamiltonian_expectation(
    params: &PhysicalParams,
    n: usize,
    squeeze: &SqueezeParams,
    t: f64,
) -> Result<f64> {
    check_order(n)?;
    let half = 0.5 * theta_gamma(params).theta;
    let sec = 1.0 / half.cos();
    let x = 2.0 * params.omega() * t + squeeze.phi();
    let two_r = 2.0 * squeeze.r();
    let bracket = two_r.cosh() + two_r.sinh() * half.sin() * (x + half).sin();
    Ok(params.hbar() * params.omega() * sec * sec * bracket * (n as f64 + 0.5))
}

/// `⟨H⟩` of the coherent state `α`: the classical energy at `(q_c, p_c)`
/// plus the squeezed vacuum value.
pub fn coherent_hamiltonian_expectation(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    alpha: Complex64,
    t: f64,
) -> f64 {
    let (qc, pc) = coherent_trajectory(params, squeeze, alpha, t);
    let m = params.mass(t);
    let classical = pc * pc / (2.0 * m) + 0.5 * m * params.omega0() * params.omega0() * qc * qc;
    classical + hamiltonian_expectation(params, 0, squeeze, t).expect("n = 0")
}

/// Numerical time average of [`hamiltonian_expectation`] over `π/ω`.
pub fn hamiltonian_time_avg(
    params: &PhysicalParams,
    n: usize,
    squeeze: &SqueezeParams,
    samples: usize,
) -> Result<f64> {
    check_order(n)?;
    Ok(periodic_mean(params, samples, |t| {
        hamiltonian_expectation(params, n, squeeze, t).unwrap_or(f64::NAN)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::make_params;
    use std::f64::consts::PI;

    fn pstar() -> PhysicalParams {
        make_params(1.0, 1.2, 1.0, 1.0).unwrap()
    }

    fn undamped() -> PhysicalParams {
        make_params(1.0, 0.0, 1.0, 1.0).unwrap()
    }

    fn squeeze(r: f64, phi: f64) -> SqueezeParams {
        SqueezeParams::new(r, phi).unwrap()
    }

    #[test]
    fn angle_values() {
        assert_eq!(theta_gamma(&undamped()).theta, 0.0);
        let a = theta_gamma(&pstar());
        assert!((a.sin - 0.96).abs() < 1e-15);
        assert!((a.cos - 0.28).abs() < 1e-15);
        assert!((a.theta - 0.96f64.atan2(0.28)).abs() < 1e-15);
        assert!((a.theta - 1.287_002_217_586_573).abs() < 1e-12);
    }

    #[test]
    fn angle_identities_and_monotone_approach_to_pi() {
        let mut last = -1.0;
        for k in 0..2000 {
            let gamma = 2.0 * k as f64 / 2000.0;
            let p = make_params(1.0, gamma, 1.0, 1.0).unwrap();
            let a = theta_gamma(&p);
            assert!((a.theta.sin() - a.sin).abs() < 1e-12);
            assert!((a.theta.cos() - a.cos).abs() < 1e-12);
            assert!(a.theta > last && a.theta < PI);
            last = a.theta;
            let (sec, direct) = sigma0_forms(&p);
            assert!((sec - direct).abs() < 1e-12 * direct);
            assert!((sec - p.omega0() / p.omega()).abs() < 1e-12 * direct);
        }
        assert!(PI - last < 0.1);
    }

    #[test]
    fn sigma0_values() {
        assert_eq!(sigma0(&undamped()), 1.0);
        let (sec, direct) = sigma0_forms(&pstar());
        assert!((direct - 1.25).abs() < 1e-15);
        assert!((sec - 1.25).abs() < 1e-12);
    }

    #[test]
    fn pseudo_stationary_ground_state_is_constant() {
        let p = pstar();
        for k in 0..20 {
            let rec = uncertainty_product(&p, 0, &SqueezeParams::NONE, 0.37 * k as f64).unwrap();
            assert!((rec.product - 0.625).abs() < 1e-14);
            assert!((rec.dq * rec.dp - 0.625).abs() < 1e-13);
            assert!((rec.ratio() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn undamped_limits() {
        let p = undamped();
        // cos(2t + φ) = 0 at t = π/4, φ = 0
        let rec = uncertainty_product(&p, 0, &squeeze(0.5, 0.0), PI / 4.0).unwrap();
        assert!((rec.product - 0.5 * 1f64.cosh()).abs() < 1e-14);
        for r in [0.2, 1.0, 2.5] {
            for t in [0.0, PI / 2.0] {
                let rec = uncertainty_product(&p, 0, &squeeze(r, 0.0), t).unwrap();
                assert!((rec.product - 0.5).abs() < 1e-12 * (2.0 * r).cosh());
            }
        }
    }

    #[test]
    fn undamped_form_is_the_zero_angle_case() {
        let p = undamped();
        for r in [0.0, 0.25, 1.0, 2.0] {
            for k in 0..32 {
                let t = k as f64 * p.half_period() / 32.0;
                let s = squeeze(r, 1.0);
                let a = uncertainty_product(&p, 0, &s, t).unwrap().product;
                let b = undamped_uncertainty(1.0, 0, &s, 2.0 * t + 1.0);
                assert!((a - b).abs() < 1e-12 * a);
            }
        }
    }

    #[test]
    fn closed_form_matches_mode_moments() {
        let p = pstar();
        let s = squeeze(0.7, 2.0);
        for n in [0, 3] {
            for t in [0.0, 0.6, 1.9] {
                let rec = uncertainty_product(&p, n, &s, t).unwrap();
                assert!((rec.dq * rec.dp - rec.product).abs() < 1e-12 * rec.product);
                let rec0 = uncertainty_product(&p, 0, &s, t).unwrap();
                assert!((rec.product / rec0.product - (2 * n + 1) as f64).abs() < 1e-13);
            }
        }
        assert!(uncertainty_product(&p, 33, &s, 0.0).is_err());
    }

    #[test]
    fn time_average_ground_state() {
        let p = pstar();
        let avg = uncertainty_time_avg(&p, 0, &SqueezeParams::NONE, 2048).unwrap();
        assert!((avg.numeric - 0.625).abs() < 1e-14);
        assert!((avg.closed_form.unwrap() - 0.625).abs() < 1e-15);
        for r in [0.25, 0.5, 1.0] {
            let avg = uncertainty_time_avg(&p, 0, &squeeze(r, 0.7), 4096).unwrap();
            assert!(avg.numeric >= 0.625 * (1.0 - 1e-9));
        }
        assert!(uncertainty_time_avg(&p, 2, &SqueezeParams::NONE, 0)
            .unwrap()
            .closed_form
            .is_none());
    }

    #[test]
    fn hamiltonian_values() {
        let h = hamiltonian_expectation(&undamped(), 0, &SqueezeParams::NONE, 3.0).unwrap();
        assert!((h - 0.5).abs() < 1e-15);
        let p = pstar();
        for t in [0.0, 1.0, 5.0] {
            let h = hamiltonian_expectation(&p, 0, &SqueezeParams::NONE, t).unwrap();
            assert!((h - 0.625).abs() < 1e-14);
        }
    }

    #[test]
    fn hamiltonian_matches_variances() {
        let p = pstar();
        for (n, r, phi, t) in [(0, 0.3, 1.0, 0.2), (1, 0.6, 0.0, 0.9), (4, 1.2, 5.0, 2.7)] {
            let s = squeeze(r, phi);
            let m = p.mass(t);
            let direct = momentum_variance(&p, n, &s, t) / (2.0 * m)
                + 0.5 * m * p.omega0() * p.omega0() * position_variance(&p, n, &s, t);
            let closed = hamiltonian_expectation(&p, n, &s, t).unwrap();
            assert!((direct - closed).abs() < 1e-12 * closed);
        }
    }

    #[test]
    fn hamiltonian_average_is_cosh() {
        let p = pstar();
        let s = squeeze(0.8, 2.0);
        let avg = hamiltonian_time_avg(&p, 2, &s, 2048).unwrap();
        let sec = sigma0(&p);
        let expected = p.hbar() * p.omega() * sec * sec * 1.6f64.cosh() * 2.5;
        assert!((avg - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn coherent_energy_matches_quadrature() {
        use crate::oracle::{make_grid, moments};
        use crate::states::{StateSpec, WaveFunction};
        let p = pstar();
        let s = SqueezeParams::new(0.4, 2.0).unwrap();
        let spec = StateSpec::coherent(1.0, -0.5, s).unwrap();
        let wave = WaveFunction::new(&p, &spec, 0.0);
        let t = 1.3;
        let grid = make_grid(&p, &wave.spec_at(t), t);
        let m = moments(&wave.sample(t, &grid.points()), &grid, &p, t).unwrap();
        let closed = coherent_hamiltonian_expectation(&p, &s, wave.alpha().unwrap(), t);
        assert!((m.energy - closed).abs() < 1e-8 * closed);
    }
}
