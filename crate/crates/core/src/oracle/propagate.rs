//! Crank-Nicolson propagation of `iħ∂_tΨ = [e^{-γt}p²/2m0 + m0ω0²e^{γt}q²/2]Ψ`.
//!
//! The Laplacian is the compact 4th-order (Numerov) form
//! `(1 + δ²/12)^{-1} δ²/h²`, so after multiplying through by `1 + δ²/12`
//! every step is a single tridiagonal solve. Coefficients are evaluated at
//! the mid-step time and the boundary is Dirichlet zero.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::PhysicalParams;
use crate::oracle::grid::GridSpec;
use crate::oracle::quadrature::norm_squared;

/// Minimum resolution, in steps per period `π/ω`.
pub const MIN_STEPS_PER_PERIOD: usize = 1000;
/// Points at each edge watched for leakage.
pub const EDGE_POINTS: usize = 5;
/// Largest tolerated probability within [`EDGE_POINTS`] of either boundary.
pub const EDGE_MASS_LIMIT: f64 = 1e-8;

pub fn minimum_steps(params: &PhysicalParams, t0: f64, t1: f64) -> usize {
    let periods = (t1 - t0).abs() / params.half_period();
    ((MIN_STEPS_PER_PERIOD as f64 * periods) - 1e-9)
        .ceil()
        .max(1.0) as usize
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evolution {
    #[serde(skip)]
    pub samples: Vec<Complex64>,
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
    pub norm_initial: f64,
    pub norm_final: f64,
    pub max_edge_mass: f64,
}

impl Evolution {
    pub fn norm_drift(&self) -> f64 {
        (self.norm_final - self.norm_initial).abs()
    }
}

fn edge_mass(psi: &[Complex64], h: f64) -> f64 {
    let n = psi.len();
    let k = EDGE_POINTS.min(n / 2);
    let head: f64 = psi[..k].iter().map(|v| v.norm_sqr()).sum();
    let tail: f64 = psi[n - k..].iter().map(|v| v.norm_sqr()).sum();
    (head + tail) * h
}

/// Solves a tridiagonal system in place by the Thomas algorithm.
/// `lower[0]` and `upper[n-1]` are ignored.
fn solve_tridiagonal(
    lower: &[Complex64],
    diag: &[Complex64],
    upper: &[Complex64],
    rhs: &mut [Complex64],
    scratch: &mut [Complex64],
) {
    let n = diag.len();
    scratch[0] = upper[0] / diag[0];
    rhs[0] /= diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * scratch[i - 1];
        scratch[i] = upper[i] / denom;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] -= scratch[i] * next;
    }
}

/// Returns the evolved samples; see [`crank_nicolson_run`] for diagnostics.
pub fn crank_nicolson_evolve(
    params: &PhysicalParams,
    initial: &[Complex64],
    grid: &GridSpec,
    t0: f64,
    t1: f64,
    n_steps: usize,
) -> Result<Vec<Complex64>> {
    crank_nicolson_run(params, initial, grid, t0, t1, n_steps).map(|e| e.samples)
}

pub fn crank_nicolson_run(
    params: &PhysicalParams,
    initial: &[Complex64],
    grid: &GridSpec,
    t0: f64,
    t1: f64,
    n_steps: usize,
) -> Result<Evolution> {
    if initial.len() != grid.n_points {
        return Err(Error::GridMismatch {
            samples: initial.len(),
            points: grid.n_points,
        });
    }
    let required = minimum_steps(params, t0, t1);
    if n_steps < required {
        return Err(Error::InsufficientSteps {
            required,
            given: n_steps,
        });
    }

    let h = grid.dq();
    let n = grid.n_points;
    let interior = n - 2;
    let q2: Vec<f64> = (1..n - 1).map(|i| grid.q(i).powi(2)).collect();
    let hbar = params.hbar();
    let dt = (t1 - t0) / n_steps as f64;
    let tau = Complex64::new(0.0, 0.5 * dt / hbar);

    let mut psi = initial.to_vec();
    psi[0] = Complex64::new(0.0, 0.0);
    psi[n - 1] = Complex64::new(0.0, 0.0);
    let norm_initial = norm_squared(&psi, grid)?;
    let mut max_edge = edge_mass(&psi, h);

    let mut lower = vec![Complex64::new(0.0, 0.0); interior];
    let mut diag = vec![Complex64::new(0.0, 0.0); interior];
    let mut upper = vec![Complex64::new(0.0, 0.0); interior];
    let mut rhs = vec![Complex64::new(0.0, 0.0); interior];
    let mut scratch = vec![Complex64::new(0.0, 0.0); interior];
    let mut potential = vec![0.0; interior];

    for step in 0..n_steps {
        let t_mid = t0 + (step as f64 + 0.5) * dt;
        let m = params.mass(t_mid);
        let kinetic = hbar * hbar / (2.0 * m * h * h);
        let spring = 0.5 * m * params.omega0() * params.omega0();
        for (v, &x2) in potential.iter_mut().zip(&q2) {
            *v = spring * x2;
        }
        // Row j of Hc: off-diagonal -k + V_{j±1}/12, diagonal 2k + 10 V_j / 12.
        let off = |v: f64| Complex64::new(-kinetic + v / 12.0, 0.0);
        let on = |v: f64| Complex64::new(2.0 * kinetic + 10.0 * v / 12.0, 0.0);
        let n_off = Complex64::new(1.0 / 12.0, 0.0);
        let n_on = Complex64::new(10.0 / 12.0, 0.0);

        for j in 0..interior {
            let left = if j > 0 {
                psi[j]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let right = if j + 1 < interior {
                psi[j + 2]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let v_left = if j > 0 { potential[j - 1] } else { 0.0 };
            let v_right = if j + 1 < interior {
                potential[j + 1]
            } else {
                0.0
            };
            rhs[j] = (n_off - tau * off(v_left)) * left
                + (n_on - tau * on(potential[j])) * psi[j + 1]
                + (n_off - tau * off(v_right)) * right;
            lower[j] = n_off + tau * off(v_left);
            diag[j] = n_on + tau * on(potential[j]);
            upper[j] = n_off + tau * off(v_right);
        }
        solve_tridiagonal(&lower, &diag, &upper, &mut rhs, &mut scratch);
        psi[1..n - 1].copy_from_slice(&rhs);

        let edge = edge_mass(&psi, h);
        max_edge = max_edge.max(edge);
        if edge > EDGE_MASS_LIMIT {
            return Err(Error::BoundaryLeak {
                t: t_mid + 0.5 * dt,
                mass: edge,
            });
        }
    }

    let norm_final = norm_squared(&psi, grid)?;
    Ok(Evolution {
        samples: psi,
        t0,
        t1,
        steps: n_steps,
        norm_initial,
        norm_final,
        max_edge_mass: max_edge,
    })
}
