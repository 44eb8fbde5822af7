//! Composite Simpson quadrature and 4th-order finite-difference operators.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::PhysicalParams;
use crate::oracle::grid::GridSpec;

/// Norm deviation above which a moment set is flagged as ill-conditioned.
pub const NORM_WARNING_THRESHOLD: f64 = 1e-6;

fn check_len(samples: usize, grid: &GridSpec) -> Result<()> {
    if samples == grid.n_points {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            samples,
            points: grid.n_points,
        })
    }
}

/// Composite Simpson rule over an odd number of equally spaced samples.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(
        n >= 3 && n % 2 == 1,
        "Simpson's rule needs an odd sample count >= 3"
    );
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even)
}

pub fn simpson_complex(values: &[Complex64], h: f64) -> Complex64 {
    let re: Vec<f64> = values.iter().map(|v| v.re).collect();
    let im: Vec<f64> = values.iter().map(|v| v.im).collect();
    Complex64::new(simpson(&re, h), simpson(&im, h))
}

/// `∂_q ψ` by the 4th-order central stencil; the two points nearest each
/// edge fall back to 2nd order and the end points assume Dirichlet zeros.
pub fn first_derivative(psi: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = psi.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let at = |i: isize| -> Complex64 {
        if i < 0 || i >= n as isize {
            Complex64::new(0.0, 0.0)
        } else {
            psi[i as usize]
        }
    };
    for (i, slot) in out.iter_mut().enumerate() {
        let i = i as isize;
        *slot = if i >= 2 && i + 2 < n as isize {
            (at(i - 2) - at(i - 1) * 8.0 + at(i + 1) * 8.0 - at(i + 2)) / (12.0 * h)
        } else {
            (at(i + 1) - at(i - 1)) / (2.0 * h)
        };
    }
    out
}

/// `∂²_q ψ` by the 4th-order central stencil, same edge handling.
pub fn second_derivative(psi: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = psi.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let at = |i: isize| -> Complex64 {
        if i < 0 || i >= n as isize {
            Complex64::new(0.0, 0.0)
        } else {
            psi[i as usize]
        }
    };
    let h2 = h * h;
    for (i, slot) in out.iter_mut().enumerate() {
        let i = i as isize;
        *slot = if i >= 2 && i + 2 < n as isize {
            (-at(i - 2) + at(i - 1) * 16.0 - at(i) * 30.0 + at(i + 1) * 16.0 - at(i + 2))
                / (12.0 * h2)
        } else {
            (at(i - 1) - at(i) * 2.0 + at(i + 1)) / h2
        };
    }
    out
}

/// `∫ |ψ|² dq`
pub fn norm_squared(psi: &[Complex64], grid: &GridSpec) -> Result<f64> {
    check_len(psi.len(), grid)?;
    let density: Vec<f64> = psi.iter().map(|v| v.norm_sqr()).collect();
    Ok(simpson(&density, grid.dq()))
}

/// `∫ a* b dq`
pub fn inner_product(a: &[Complex64], b: &[Complex64], grid: &GridSpec) -> Result<Complex64> {
    check_len(a.len(), grid)?;
    check_len(b.len(), grid)?;
    let prod: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x.conj() * y).collect();
    Ok(simpson_complex(&prod, grid.dq()))
}

/// `‖a - b‖ / ‖b‖` in `L²`.
pub fn relative_l2_distance(a: &[Complex64], b: &[Complex64], grid: &GridSpec) -> Result<f64> {
    check_len(a.len(), grid)?;
    let diff: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    Ok((norm_squared(&diff, grid)? / norm_squared(b, grid)?).sqrt())
}

/// `|⟨a|b⟩|² / (⟨a|a⟩⟨b|b⟩)`
pub fn fidelity(a: &[Complex64], b: &[Complex64], grid: &GridSpec) -> Result<f64> {
    let overlap = inner_product(a, b, grid)?;
    Ok(overlap.norm_sqr() / (norm_squared(a, grid)? * norm_squared(b, grid)?))
}

/// Expectation values of a sampled state, normalized by its grid norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub norm: f64,
    pub q: f64,
    pub q2: f64,
    pub p: f64,
    pub p2: f64,
    /// `e^{-γt}⟨p²⟩/2m0 + m0ω0²e^{γt}⟨q²⟩/2`
    pub energy: f64,
    /// `⟨(q - ⟨q⟩)²⟩`.
    pub var_q: f64,
    /// `⟨(p - ⟨p⟩)²⟩`, taken on `e^{-i⟨p⟩q/ħ}ψ` so the stencils see only
    /// the envelope and not the carrier wave.
    pub var_p: f64,
    pub t: f64,
    /// Set when `|norm - 1| > 1e-6`.
    pub ill_conditioned: bool,
}

impl Moments {
    pub fn dq(&self) -> f64 {
        self.var_q.max(0.0).sqrt()
    }

    pub fn dp(&self) -> f64 {
        self.var_p.max(0.0).sqrt()
    }

    /// `Δq·Δp` about the mean.
    pub fn uncertainty(&self) -> f64 {
        self.dq() * self.dp()
    }

    /// `sqrt(⟨q²⟩⟨p²⟩)`, the product about the origin.
    pub fn raw_uncertainty(&self) -> f64 {
        (self.q2 * self.p2).sqrt()
    }
}

/// Position moments by Simpson quadrature, momentum moments from
/// `∫ψ*(-iħ∂_q)^k ψ dq` with 4th-order differences.
pub fn moments(
    samples: &[Complex64],
    grid: &GridSpec,
    params: &PhysicalParams,
    t: f64,
) -> Result<Moments> {
    check_len(samples.len(), grid)?;
    let h = grid.dq();
    let qs = grid.points();
    let hbar = params.hbar();
    let density: Vec<f64> = samples.iter().map(|v| v.norm_sqr()).collect();
    let norm = simpson(&density, h);
    let weighted = |power: i32| -> f64 {
        let f: Vec<f64> = density
            .iter()
            .zip(&qs)
            .map(|(d, q)| d * q.powi(power))
            .collect();
        simpson(&f, h) / norm
    };
    let q = weighted(1);
    let q2 = weighted(2);

    let var_q = {
        let f: Vec<f64> = density
            .iter()
            .zip(&qs)
            .map(|(d, x)| d * (x - q).powi(2))
            .collect();
        simpson(&f, h) / norm
    };

    let momentum = |psi: &[Complex64]| -> (f64, f64) {
        let d1 = first_derivative(psi, h);
        let d2 = second_derivative(psi, h);
        let first: Vec<Complex64> = psi.iter().zip(&d1).map(|(s, d)| s.conj() * d).collect();
        let second: Vec<Complex64> = psi.iter().zip(&d2).map(|(s, d)| s.conj() * d).collect();
        (
            (simpson_complex(&first, h) * Complex64::new(0.0, -hbar)).re / norm,
            (simpson_complex(&second, h) * (-hbar * hbar)).re / norm,
        )
    };
    let (p, p2) = momentum(samples);
    let var_p = if p == 0.0 {
        p2
    } else {
        let shifted: Vec<Complex64> = samples
            .iter()
            .zip(&qs)
            .map(|(s, x)| s * Complex64::from_polar(1.0, -p * x / hbar))
            .collect();
        let (dp_mean, dp2) = momentum(&shifted);
        dp2 - dp_mean * dp_mean
    };

    let m = params.mass(t);
    let energy = p2 / (2.0 * m) + 0.5 * m * params.omega0() * params.omega0() * q2;
    Ok(Moments {
        norm,
        q,
        q2,
        p,
        p2,
        energy,
        var_q,
        var_p,
        t,
        ill_conditioned: (norm - 1.0).abs() > NORM_WARNING_THRESHOLD,
    })
}
