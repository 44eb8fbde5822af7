//! Invariant ladder operators applied on the grid:
//! `â = (i/√ħ)[u*(-iħ∂_q) - m0 e^{γt} u̇* q]`,
//! `â† = -(i/√ħ)[u(-iħ∂_q) - m0 e^{γt} u̇ q]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::{mode_u0, mode_u_rphi, ModeValue, PhysicalParams, SqueezeParams};
use crate::oracle::grid::GridSpec;
use crate::oracle::quadrature::first_derivative;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Annihilation,
    Creation,
}

/// Applies the ladder operator built on an arbitrary mode.
pub fn apply_ladder(
    params: &PhysicalParams,
    mode: &ModeValue,
    ladder: Ladder,
    samples: &[Complex64],
    grid: &GridSpec,
) -> Result<Vec<Complex64>> {
    if samples.len() != grid.n_points {
        return Err(Error::GridMismatch {
            samples: samples.len(),
            points: grid.n_points,
        });
    }
    let hbar = params.hbar();
    let mass = params.mass(mode.t);
    let (u, udot, sign) = match ladder {
        Ladder::Annihilation => (mode.u.conj(), mode.udot.conj(), 1.0),
        Ladder::Creation => (mode.u, mode.udot, -1.0),
    };
    let prefactor = Complex64::new(0.0, sign / hbar.sqrt());
    let derivative = first_derivative(samples, grid.dq());
    let qs = grid.points();
    Ok(samples
        .iter()
        .zip(&derivative)
        .zip(&qs)
        .map(|((psi, dpsi), &q)| {
            let momentum = Complex64::new(0.0, -hbar) * dpsi;
            prefactor * (u * momentum - udot * mass * q * psi)
        })
        .collect())
}

/// `â_{rφ}(t)` on sampled data.
pub fn apply_annihilation(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    t: f64,
    samples: &[Complex64],
    grid: &GridSpec,
) -> Result<Vec<Complex64>> {
    apply_ladder(
        params,
        &mode_u_rphi(params, squeeze, t),
        Ladder::Annihilation,
        samples,
        grid,
    )
}

/// `â†_{rφ}(t)` on sampled data.
pub fn apply_creation(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    t: f64,
    samples: &[Complex64],
    grid: &GridSpec,
) -> Result<Vec<Complex64>> {
    apply_ladder(
        params,
        &mode_u_rphi(params, squeeze, t),
        Ladder::Creation,
        samples,
        grid,
    )
}

/// `μ* â0 ψ - ν* â0† ψ`, built from the unsqueezed operators.
pub fn apply_bogoliubov_annihilation(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    t: f64,
    samples: &[Complex64],
    grid: &GridSpec,
) -> Result<Vec<Complex64>> {
    let base = mode_u0(params, t);
    let lowered = apply_ladder(params, &base, Ladder::Annihilation, samples, grid)?;
    let raised = apply_ladder(params, &base, Ladder::Creation, samples, grid)?;
    let (mu, nu) = (squeeze.mu().conj(), squeeze.nu().conj());
    Ok(lowered
        .iter()
        .zip(&raised)
        .map(|(a, c)| mu * a - nu * c)
        .collect())
}
