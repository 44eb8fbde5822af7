//! Oscillator constants, classical mode functions and the squeeze
//! parameterization of the general Wronskian-normalized solution.
//!
//! The reference solution is
//! `u0(t) = exp(-γt/2) / sqrt(2 m0 ω) · exp(-iωt)` and every other
//! normalized solution is `u = cosh r · u0 + e^{iφ} sinh r · u0*`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|W - i|` for modes built by this module.
pub const WRONSKIAN_CONSTRUCTION_TOL: f64 = 1e-12;
/// Tolerance on `|W - i|` for externally supplied modes.
pub const WRONSKIAN_ACCEPT_TOL: f64 = 1e-8;

/// Constants of the Caldirola-Kanai oscillator `H = e^{-γt} p²/2m0 + m0 ω0² e^{γt} q²/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    m0: f64,
    gamma: f64,
    omega0: f64,
    hbar: f64,
    omega: f64,
}

impl PhysicalParams {
    pub fn new(m0: f64, gamma: f64, omega0: f64, hbar: f64) -> Result<Self> {
        positive("m0", m0)?;
        positive("omega0", omega0)?;
        positive("hbar", hbar)?;
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "must be finite and non-negative",
            });
        }
        if gamma >= 2.0 * omega0 {
            return Err(Error::NotUnderdamped { gamma, omega0 });
        }
        // (ω0 - γ/2)(ω0 + γ/2) keeps precision near the critical point.
        let omega = ((omega0 - 0.5 * gamma) * (omega0 + 0.5 * gamma)).sqrt();
        Ok(Self {
            m0,
            gamma,
            omega0,
            hbar,
            omega,
        })
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Damped frequency `sqrt(ω0² - γ²/4)`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Time-dependent mass `m0 e^{γt}`.
    pub fn mass(&self, t: f64) -> f64 {
        self.m0 * (self.gamma * t).exp()
    }

    /// Shortest period of every `2ωt + const` dependence, `π/ω`.
    pub fn half_period(&self) -> f64 {
        PI / self.omega
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

/// Builds [`PhysicalParams`], rejecting critical and overdamped constants.
pub fn make_params(m0: f64, gamma: f64, omega0: f64, hbar: f64) -> Result<PhysicalParams> {
    PhysicalParams::new(m0, gamma, omega0, hbar)
}

/// Squeeze magnitude and phase; `μ = cosh r`, `ν = e^{iφ} sinh r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParams {
    r: f64,
    phi: f64,
}

impl SqueezeParams {
    pub const NONE: SqueezeParams = SqueezeParams { r: 0.0, phi: 0.0 };

    /// `phi` is reduced into `[0, 2π)`.
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                reason: "must be finite and non-negative",
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                reason: "must be finite",
            });
        }
        Ok(Self {
            r,
            phi: reduce_angle(phi),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn mu(&self) -> Complex64 {
        Complex64::new(self.r.cosh(), 0.0)
    }

    pub fn nu(&self) -> Complex64 {
        Complex64::from_polar(self.r.sinh(), self.phi)
    }
}

impl Default for SqueezeParams {
    fn default() -> Self {
        Self::NONE
    }
}

pub(crate) fn reduce_angle(phi: f64) -> f64 {
    let reduced = phi.rem_euclid(TAU);
    if reduced >= TAU {
        0.0
    } else {
        reduced
    }
}

/// A complex classical solution and its velocity at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeValue {
    pub u: Complex64,
    pub udot: Complex64,
    pub t: f64,
}

impl ModeValue {
    /// `m0 e^{γt} (u u̇* - u* u̇)`, equal to `i` for a normalized mode.
    pub fn wronskian(&self, params: &PhysicalParams) -> Complex64 {
        let bracket = self.u * self.udot.conj() - self.u.conj() * self.udot;
        bracket * params.mass(self.t)
    }

    pub fn wronskian_deviation(&self, params: &PhysicalParams) -> f64 {
        (self.wronskian(params) - Complex64::i()).norm()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            u: self.u * factor,
            udot: self.udot * factor,
            t: self.t,
        }
    }
}

/// The reference mode `u0` and its derivative `(-γ/2 - iω) u0`.
pub fn mode_u0(params: &PhysicalParams, t: f64) -> ModeValue {
    let amplitude = (-0.5 * params.gamma * t).exp() / (2.0 * params.m0 * params.omega).sqrt();
    let u = Complex64::from_polar(amplitude, -params.omega * t);
    let rate = Complex64::new(-0.5 * params.gamma, -params.omega);
    ModeValue {
        u,
        udot: rate * u,
        t,
    }
}

/// `u_{rφ} = cosh r · u0 + e^{iφ} sinh r · u0*`, derivative combined alike.
pub fn mode_u_rphi(params: &PhysicalParams, squeeze: &SqueezeParams, t: f64) -> ModeValue {
    let base = mode_u0(params, t);
    let mu = squeeze.mu();
    let nu = squeeze.nu();
    ModeValue {
        u: mu * base.u + nu * base.u.conj(),
        udot: mu * base.udot + nu * base.udot.conj(),
        t,
    }
}

/// Bogoliubov pair `(μ, ν)` of an arbitrary mode in the `(u0, u0*)` basis.
pub fn bogoliubov_coefficients(
    params: &PhysicalParams,
    mode: &ModeValue,
) -> (Complex64, Complex64) {
    let base = mode_u0(params, mode.t);
    // det = u0 u̇0* - u0* u̇0 = i / (m0 e^{γt})
    let det = base.u * base.udot.conj() - base.u.conj() * base.udot;
    let mu = (mode.u * base.udot.conj() - base.u.conj() * mode.udot) / det;
    let nu = (base.u * mode.udot - base.udot * mode.u) / det;
    (mu, nu)
}

/// Recovers `(r, φ)` from a normalized mode, in the gauge where `μ` is real
/// and positive. The dropped overall phase does not change any density.
pub fn squeeze_from_mode(params: &PhysicalParams, mode: &ModeValue) -> Result<SqueezeParams> {
    let deviation = mode.wronskian_deviation(params);
    if deviation.is_nan() || deviation > WRONSKIAN_ACCEPT_TOL {
        return Err(Error::WronskianViolation { deviation });
    }
    let (mu, nu) = bogoliubov_coefficients(params, mode);
    let gauge = if mu.norm() > 0.0 {
        mu.conj() / mu.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let nu = nu * gauge;
    let r = nu.norm().asinh();
    let phi = if r == 0.0 { 0.0 } else { nu.arg() };
    SqueezeParams::new(r, phi)
}

/// Squeeze parameters that turn the t = 0 state into an undamped oscillator
/// eigenfunction of frequency `ω`: `cosh 2r0 = 1 + γ²/8ω²` with the phase
/// branch on which `B(t=0)` is real, `φ0 = π + atan(4ω/γ)`.
pub fn special_squeeze(params: &PhysicalParams) -> Result<SqueezeParams> {
    let gamma = params.gamma;
    let omega = params.omega;
    if gamma == 0.0 {
        return Err(Error::UndefinedSqueezePhase);
    }
    let x = gamma * gamma / (8.0 * omega * omega);
    // acosh(1 + x) = ln(1 + x + sqrt(x(2 + x))), stable for small x.
    let r0 = 0.5 * (x + (x * (2.0 + x)).sqrt()).ln_1p();
    let phi0 = PI + (4.0 * omega / gamma).atan();
    SqueezeParams::new(r0, phi0)
}

/// The tangent-only solution `atan(4ω/γ)` in `(0, π/2)`, which does not
/// yield an undamped eigenfunction; kept for reporting the branch choice.
pub fn special_squeeze_first_quadrant(params: &PhysicalParams) -> Result<SqueezeParams> {
    let s = special_squeeze(params)?;
    SqueezeParams::new(s.r(), s.phi() - PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pstar() -> PhysicalParams {
        make_params(1.0, 1.2, 1.0, 1.0).unwrap()
    }

    #[test]
    fn damped_frequency() {
        assert_eq!(make_params(1.0, 0.0, 1.0, 1.0).unwrap().omega(), 1.0);
        assert!((pstar().omega() - 0.8).abs() < 1e-15);
        let p = pstar();
        let lhs = p.omega() * p.omega() + p.gamma() * p.gamma() / 4.0;
        assert!((lhs - p.omega0() * p.omega0()).abs() < 1e-15);
    }

    #[test]
    fn rejects_critical_and_invalid() {
        assert_eq!(
            make_params(1.0, 2.0, 1.0, 1.0),
            Err(Error::NotUnderdamped {
                gamma: 2.0,
                omega0: 1.0
            })
        );
        assert!(matches!(
            make_params(1.0, 2.5, 1.0, 1.0),
            Err(Error::NotUnderdamped { .. })
        ));
        assert!(make_params(0.0, 0.1, 1.0, 1.0).is_err());
        assert!(make_params(1.0, -0.1, 1.0, 1.0).is_err());
        assert!(make_params(1.0, 0.1, 1.0, f64::NAN).is_err());
        assert!(SqueezeParams::new(-0.1, 0.0).is_err());
    }

    #[test]
    fn phase_is_reduced() {
        let s = SqueezeParams::new(0.2, -1.0).unwrap();
        assert!((s.phi() - (TAU - 1.0)).abs() < 1e-15);
        let s = SqueezeParams::new(0.2, 7.0).unwrap();
        assert!((s.phi() - (7.0 - TAU)).abs() < 1e-15);
    }

    #[test]
    fn u0_at_origin_and_quarter_period() {
        let m = mode_u0(&pstar(), 0.0);
        let amp = 1.0 / 1.6f64.sqrt();
        assert!((m.u - Complex64::new(amp, 0.0)).norm() < 1e-15);
        assert!((m.udot - Complex64::new(-0.6, -0.8) * amp).norm() < 1e-15);

        let p = make_params(1.0, 0.0, 1.0, 1.0).unwrap();
        let m = mode_u0(&p, PI / 2.0);
        let expected = Complex64::new(0.0, -1.0 / 2f64.sqrt());
        assert!((m.u - expected).norm() < 1e-15);
    }

    #[test]
    fn wronskian_of_constructed_modes() {
        let p = pstar();
        assert!(mode_u0(&p, 3.3).wronskian_deviation(&p) < WRONSKIAN_CONSTRUCTION_TOL);
        let s = SqueezeParams::new(0.3, 1.0).unwrap();
        assert!(mode_u_rphi(&p, &s, 0.7).wronskian_deviation(&p) < WRONSKIAN_CONSTRUCTION_TOL);
    }

    #[test]
    fn zero_squeeze_is_reference_mode() {
        let p = pstar();
        for phi in [0.0, 1.0, 4.0] {
            let s = SqueezeParams::new(0.0, phi).unwrap();
            assert_eq!(mode_u_rphi(&p, &s, 1.7), mode_u0(&p, 1.7));
        }
        let s = SqueezeParams::new(0.5, 0.0).unwrap();
        let m = mode_u_rphi(&p, &s, 0.0);
        let expected = 0.5f64.exp() / 1.6f64.sqrt();
        assert!((m.u - Complex64::new(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn squeeze_recovery() {
        let p = pstar();
        let s = squeeze_from_mode(&p, &mode_u0(&p, 2.0)).unwrap();
        assert_eq!((s.r(), s.phi()), (0.0, 0.0));

        let target = SqueezeParams::new(0.4, 2.1).unwrap();
        let s = squeeze_from_mode(&p, &mode_u_rphi(&p, &target, 1.3)).unwrap();
        assert!((s.r() - 0.4).abs() < 1e-10);
        assert!((s.phi() - 2.1).abs() < 1e-10);

        // a global phase is a gauge choice
        let rotated = mode_u_rphi(&p, &target, 1.3).scale(Complex64::from_polar(1.0, 0.9));
        let s = squeeze_from_mode(&p, &rotated).unwrap();
        assert!((s.r() - 0.4).abs() < 1e-10);
        assert!((s.phi() - 2.1).abs() < 1e-10);
    }

    #[test]
    fn squeeze_recovery_rejects_broken_wronskian() {
        let p = pstar();
        let broken = mode_u0(&p, 0.5).scale(Complex64::new(1.01, 0.0));
        assert!(matches!(
            squeeze_from_mode(&p, &broken),
            Err(Error::WronskianViolation { .. })
        ));
    }

    #[test]
    fn special_squeeze_values() {
        let p = pstar();
        let s = special_squeeze(&p).unwrap();
        // acosh(1.28125)/2 and π + atan(8/3)
        assert!((s.r() - 0.366_724_604_230_136_75).abs() < 1e-14);
        assert!((s.phi() - 4.353_618_310_114_117_5).abs() < 1e-14);
        let first = special_squeeze_first_quadrant(&p).unwrap();
        assert!((first.phi() - 1.212_025_656_524_324_4).abs() < 1e-14);

        let p0 = make_params(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(special_squeeze(&p0), Err(Error::UndefinedSqueezePhase));

        let mut last = f64::INFINITY;
        for gamma in [0.1, 1e-2, 1e-4, 1e-8] {
            let r0 = special_squeeze(&make_params(1.0, gamma, 1.0, 1.0).unwrap())
                .unwrap()
                .r();
            assert!(r0 < last);
            last = r0;
        }
        assert!(last < 1e-8);
    }

    #[test]
    fn special_squeeze_makes_b_real_at_origin() {
        let p = pstar();
        let s = special_squeeze(&p).unwrap();
        let m = mode_u_rphi(&p, &s, 0.0);
        // u̇ = -iω u  <=>  B real and equal to m0 ω / 2ħ
        let target = Complex64::new(0.0, -p.omega()) * m.u;
        assert!((m.udot - target).norm() < 1e-14);
    }
}
