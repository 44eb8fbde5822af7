//! Exact wave functions: squeezed number states and coherent states.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::{mode_u_rphi, PhysicalParams, SqueezeParams};

/// Highest Hermite order evaluated by upward recurrence.
pub const MAX_HERMITE_ORDER: usize = 32;

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::HermiteOrder {
            n,
            max: MAX_HERMITE_ORDER,
        });
    }
    Ok(hermite_unchecked(n, x))
}

fn hermite_unchecked(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// `(2^n n!)^{-1/2}`
fn hermite_norm(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc / (2.0 * k as f64).sqrt())
}

/// Which branch of `Θ = -arg u` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ThetaBranch {
    /// Principal value in `(-π, π]`; for single-time evaluation.
    #[default]
    Principal,
    /// Continuous in `t`; required whenever `Ψ` is differentiated in time.
    Continuous,
}

/// Sign convention for the Gaussian width `B`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub enum BConvention {
    /// `B = -i m0 e^{γt} u̇* / (2ħ u*)`, with `Re B > 0`.
    #[default]
    Normalizable,
    /// `B = +i m0 e^{γt} u̇* / (2ħ u*)`; not normalizable, negative control only.
    FlippedSign,
    /// Normalizable `B` with its real part multiplied by the factor.
    ScaledReal(f64),
}

/// Coefficients of the Gaussian `(A/√π)^{1/2} e^{-iΘ(n+½)} H_n(Aq) e^{-Bq²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussCoeffs {
    pub a: f64,
    pub b: Complex64,
    /// Principal value of `-arg u_{rφ}`.
    pub theta: f64,
    /// `-arg u_{rφ}` continued from `Θ(0) ∈ (-π/2, π/2)`.
    pub theta_continuous: f64,
    pub t: f64,
}

impl GaussCoeffs {
    pub fn theta_on(&self, branch: ThetaBranch) -> f64 {
        match branch {
            ThetaBranch::Principal => self.theta,
            ThetaBranch::Continuous => self.theta_continuous,
        }
    }

    /// Position standard deviation of the `n`-th number state, `sqrt(n+½)/A`.
    pub fn position_width(&self, n: usize) -> f64 {
        (n as f64 + 0.5).sqrt() / self.a
    }
}

/// `Θ(t) = ωt - arg(cosh r + sinh r e^{i(2ωt+φ)})`. The second term stays in
/// `(-π/2, π/2)` because `cosh r > sinh r`, so this is continuous in `t`.
pub fn continuous_theta(params: &PhysicalParams, squeeze: &SqueezeParams, t: f64) -> f64 {
    let x = 2.0 * params.omega() * t + squeeze.phi();
    let (sh, ch) = (squeeze.r().sinh(), squeeze.r().cosh());
    params.omega() * t - (sh * x.sin()).atan2(ch + sh * x.cos())
}

pub fn gauss_coeffs(params: &PhysicalParams, squeeze: &SqueezeParams, t: f64) -> GaussCoeffs {
    gauss_coeffs_with(params, squeeze, t, BConvention::Normalizable)
}

pub fn gauss_coeffs_with(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    t: f64,
    convention: BConvention,
) -> GaussCoeffs {
    let mode = mode_u_rphi(params, squeeze, t);
    let hbar = params.hbar();
    let a = 1.0 / (2.0 * hbar * mode.u.norm_sqr()).sqrt();
    let normalizable =
        Complex64::new(0.0, -params.mass(t)) * mode.udot.conj() / (2.0 * hbar * mode.u.conj());
    let b = match convention {
        BConvention::Normalizable => normalizable,
        BConvention::FlippedSign => -normalizable,
        BConvention::ScaledReal(f) => Complex64::new(f * normalizable.re, normalizable.im),
    };
    let mut theta = -mode.u.arg();
    if theta <= -PI {
        theta += 2.0 * PI;
    }
    GaussCoeffs {
        a,
        b,
        theta,
        theta_continuous: continuous_theta(params, squeeze, t),
        t,
    }
}

/// Removes `2π` jumps from a sampled phase so consecutive steps stay below `π`.
pub fn unwrap_phases(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &p in phases {
        if let Some(last) = prev {
            let mut d = p + offset - last;
            while d > PI {
                offset -= 2.0 * PI;
                d -= 2.0 * PI;
            }
            while d <= -PI {
                offset += 2.0 * PI;
                d += 2.0 * PI;
            }
        }
        let v = p + offset;
        out.push(v);
        prev = Some(v);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StateKind {
    Number(usize),
    /// Position and momentum expectation values at the evaluation time.
    Coherent {
        qc: f64,
        pc: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    kind: StateKind,
    squeeze: SqueezeParams,
}

impl StateSpec {
    pub fn new(kind: StateKind, squeeze: SqueezeParams) -> Result<Self> {
        match kind {
            StateKind::Number(n) if n > MAX_HERMITE_ORDER => {
                return Err(Error::HermiteOrder {
                    n,
                    max: MAX_HERMITE_ORDER,
                })
            }
            StateKind::Coherent { qc, pc } if !(qc.is_finite() && pc.is_finite()) => {
                return Err(Error::InvalidParameter {
                    name: "qc/pc",
                    value: if qc.is_finite() { pc } else { qc },
                    reason: "must be finite",
                })
            }
            _ => {}
        }
        Ok(Self { kind, squeeze })
    }

    pub fn number(n: usize, squeeze: SqueezeParams) -> Result<Self> {
        Self::new(StateKind::Number(n), squeeze)
    }

    pub fn coherent(qc: f64, pc: f64, squeeze: SqueezeParams) -> Result<Self> {
        Self::new(StateKind::Coherent { qc, pc }, squeeze)
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn squeeze(&self) -> SqueezeParams {
        self.squeeze
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveSample {
    pub q: f64,
    pub psi: Complex64,
}

/// Phase-space point `(q_c, p_c)` of the coherent state with eigenvalue `α`.
pub fn coherent_trajectory(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    alpha: Complex64,
    t: f64,
) -> (f64, f64) {
    let mode = mode_u_rphi(params, squeeze, t);
    let sqrt_hbar = params.hbar().sqrt();
    let qc = 2.0 * sqrt_hbar * (alpha * mode.u).re;
    let pc = 2.0 * sqrt_hbar * params.mass(t) * (alpha * mode.udot).re;
    (qc, pc)
}

/// Inverse of [`coherent_trajectory`]: `α = (i/√ħ)(u* p_c - m0 e^{γt} u̇* q_c)`.
pub fn alpha_from_phase_point(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    t: f64,
    qc: f64,
    pc: f64,
) -> Complex64 {
    let mode = mode_u_rphi(params, squeeze, t);
    let inner = mode.u.conj() * pc - mode.udot.conj() * (params.mass(t) * qc);
    Complex64::i() * inner / params.hbar().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Profile {
    Number(usize),
    Coherent(Complex64),
}

/// A state followed in time. Coherent states are pinned by their `α`, so
/// `(q_c, p_c)` move along the classical trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveFunction {
    params: PhysicalParams,
    squeeze: SqueezeParams,
    profile: Profile,
    branch: ThetaBranch,
    convention: BConvention,
}

impl WaveFunction {
    /// Coherent `(q_c, p_c)` in `spec` are read as values at `anchor_t`.
    pub fn new(params: &PhysicalParams, spec: &StateSpec, anchor_t: f64) -> Self {
        let squeeze = spec.squeeze();
        let profile = match spec.kind() {
            StateKind::Number(n) => Profile::Number(n),
            StateKind::Coherent { qc, pc } => {
                Profile::Coherent(alpha_from_phase_point(params, &squeeze, anchor_t, qc, pc))
            }
        };
        Self {
            params: *params,
            squeeze,
            profile,
            branch: ThetaBranch::Principal,
            convention: BConvention::Normalizable,
        }
    }

    pub fn from_alpha(params: &PhysicalParams, squeeze: &SqueezeParams, alpha: Complex64) -> Self {
        Self {
            params: *params,
            squeeze: *squeeze,
            profile: Profile::Coherent(alpha),
            branch: ThetaBranch::Principal,
            convention: BConvention::Normalizable,
        }
    }

    pub fn with_branch(mut self, branch: ThetaBranch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_convention(mut self, convention: BConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn squeeze(&self) -> &SqueezeParams {
        &self.squeeze
    }

    /// Number index, or `None` for a coherent state.
    pub fn number(&self) -> Option<usize> {
        match self.profile {
            Profile::Number(n) => Some(n),
            Profile::Coherent(_) => None,
        }
    }

    pub fn alpha(&self) -> Option<Complex64> {
        match self.profile {
            Profile::Number(_) => None,
            Profile::Coherent(a) => Some(a),
        }
    }

    /// `(⟨q⟩, ⟨p⟩)` at time `t`.
    pub fn phase_point(&self, t: f64) -> (f64, f64) {
        match self.profile {
            Profile::Number(_) => (0.0, 0.0),
            Profile::Coherent(alpha) => coherent_trajectory(&self.params, &self.squeeze, alpha, t),
        }
    }

    pub fn coeffs(&self, t: f64) -> GaussCoeffs {
        gauss_coeffs_with(&self.params, &self.squeeze, t, self.convention)
    }

    pub fn spec_at(&self, t: f64) -> StateSpec {
        let kind = match self.profile {
            Profile::Number(n) => StateKind::Number(n),
            Profile::Coherent(_) => {
                let (qc, pc) = self.phase_point(t);
                StateKind::Coherent { qc, pc }
            }
        };
        StateSpec {
            kind,
            squeeze: self.squeeze,
        }
    }

    pub fn eval(&self, t: f64, q: f64) -> Complex64 {
        self.evaluator(t)(q)
    }

    pub fn sample(&self, t: f64, qs: &[f64]) -> Vec<Complex64> {
        let f = self.evaluator(t);
        qs.iter().map(|&q| f(q)).collect()
    }

    /// Closure evaluating `Ψ(·, t)`, with all `t`-dependent factors hoisted.
    pub fn evaluator(&self, t: f64) -> impl Fn(f64) -> Complex64 {
        let c = self.coeffs(t);
        let theta = c.theta_on(self.branch);
        let envelope = (c.a / PI.sqrt()).sqrt();
        let (a, b) = (c.a, c.b);
        let hbar = self.params.hbar();
        let (n, qc, pc) = match self.profile {
            Profile::Number(n) => (Some(n), 0.0, 0.0),
            Profile::Coherent(_) => {
                let (qc, pc) = self.phase_point(t);
                (None, qc, pc)
            }
        };
        let prefactor = match n {
            Some(n) => {
                let order = n as f64 + 0.5;
                Complex64::from_polar(envelope * hermite_norm(n), -theta * order)
            }
            None => Complex64::from_polar(envelope, -0.5 * theta - 0.5 * pc * qc / hbar),
        };
        move |q: f64| match n {
            Some(n) => prefactor * hermite_unchecked(n, a * q) * (-b * q * q).exp(),
            None => {
                let d = q - qc;
                prefactor * (Complex64::new(0.0, pc * q / hbar) - b * d * d).exp()
            }
        }
    }
}

/// `Ψ_n(q, t, r, φ)` on the principal `Θ` branch.
pub fn eval_number_state(
    params: &PhysicalParams,
    spec: &StateSpec,
    t: f64,
    q: f64,
) -> Result<Complex64> {
    match spec.kind() {
        StateKind::Number(_) => Ok(WaveFunction::new(params, spec, t).eval(t, q)),
        StateKind::Coherent { .. } => Err(Error::WrongStateKind { expected: "number" }),
    }
}

/// Coherent state with expectation values `(q_c, p_c)` at time `t`.
pub fn eval_coherent_state(
    params: &PhysicalParams,
    spec: &StateSpec,
    t: f64,
    q: f64,
) -> Result<Complex64> {
    match spec.kind() {
        StateKind::Coherent { .. } => Ok(WaveFunction::new(params, spec, t).eval(t, q)),
        StateKind::Number(_) => Err(Error::WrongStateKind {
            expected: "coherent",
        }),
    }
}
