use serde::Serialize;

use crate::modes::PhysicalParams;
use crate::states::{gauss_coeffs, StateKind, StateSpec, WaveFunction};

pub const MIN_GRID_POINTS: usize = 513;
pub const MAX_GRID_POINTS: usize = (1 << 20) + 1;
/// Target for `dq · k`, where `k` is the largest local wave number that
/// carries weight; the 4th-order stencils then stay near 1e-10 relative.
pub const RESOLUTION_TARGET: f64 = 0.02;
/// `dq · k` target for [`window_grid`]; the compact propagator tolerates a
/// coarser spacing than the explicit stencils.
pub const PROPAGATION_RESOLUTION: f64 = 0.1;
/// Half-width of a grid in units of the state's position standard deviation.
pub const GRID_HALF_WIDTH_SIGMAS: f64 = 10.0;

/// Uniform position grid with `2^k + 1` points, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub n_points: usize,
}

/// Smallest `2^k + 1 ≥ max(requested, 513)`, capped at `2^20 + 1`.
pub fn round_points(requested: usize) -> usize {
    let wanted = requested.clamp(MIN_GRID_POINTS, MAX_GRID_POINTS) - 1;
    wanted.next_power_of_two() + 1
}

impl GridSpec {
    pub fn new(q_min: f64, q_max: f64, n_points: usize) -> Self {
        Self {
            q_min,
            q_max,
            n_points: round_points(n_points),
        }
    }

    pub fn centered(center: f64, half_width: f64, n_points: usize) -> Self {
        Self::new(center - half_width, center + half_width, n_points)
    }

    pub fn with_points(self, n_points: usize) -> Self {
        Self::new(self.q_min, self.q_max, n_points)
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.n_points - 1) as f64
    }

    pub fn q(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.dq()
    }

    pub fn points(&self) -> Vec<f64> {
        let dq = self.dq();
        (0..self.n_points)
            .map(|i| self.q_min + i as f64 * dq)
            .collect()
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.q_min + self.q_max)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.q_max - self.q_min)
    }

    /// Grid covering both, at least as fine as the finer of the two.
    pub fn union(&self, other: &GridSpec) -> GridSpec {
        let q_min = self.q_min.min(other.q_min);
        let q_max = self.q_max.max(other.q_max);
        let dq = self.dq().min(other.dq());
        let needed = ((q_max - q_min) / dq * (1.0 - 1e-12)).ceil();
        let needed = needed.min(MAX_GRID_POINTS as f64) as usize + 1;
        GridSpec::new(q_min, q_max, needed)
    }
}

/// Grid centered at `⟨q⟩` with half-width `max(10σ, |q_c| + 10σ)`, where
/// `σ = sqrt(n+½)/A` is the position spread of the state at `t`. The point
/// count is the smallest that resolves the state, see [`make_grid_with`].
pub fn make_grid(params: &PhysicalParams, spec: &StateSpec, t: f64) -> GridSpec {
    make_grid_with(params, spec, t, MIN_GRID_POINTS)
}

/// As [`make_grid`] with at least `min_points` points. The spacing keeps
/// `dq · k ≤ RESOLUTION_TARGET` for the wave number
/// `k = sqrt(2n+1) (|B|/Re B) / σ0 + |p_c|/ħ`, which accounts for the
/// chirp `Im B` of squeezed states.
pub fn make_grid_with(
    params: &PhysicalParams,
    spec: &StateSpec,
    t: f64,
    min_points: usize,
) -> GridSpec {
    make_grid_resolved(params, spec, t, min_points, RESOLUTION_TARGET)
}

/// As [`make_grid_with`] with an explicit target for `dq · k`.
pub fn make_grid_resolved(
    params: &PhysicalParams,
    spec: &StateSpec,
    t: f64,
    min_points: usize,
    resolution: f64,
) -> GridSpec {
    let (center, half_width, k) = support(params, spec, t);
    let points = points_for(2.0 * half_width, resolution / k);
    GridSpec::centered(center, half_width, min_points.max(points))
}

/// Center, half-width and largest significant wave number of the state.
fn support(params: &PhysicalParams, spec: &StateSpec, t: f64) -> (f64, f64, f64) {
    let coeffs = gauss_coeffs(params, &spec.squeeze(), t);
    let (n, center, pc) = match spec.kind() {
        StateKind::Number(n) => (n, 0.0, 0.0),
        StateKind::Coherent { qc, pc } => (0, qc, pc),
    };
    let spread = GRID_HALF_WIDTH_SIGMAS * coeffs.position_width(n);
    let half_width = spread.max(center.abs() + spread);
    let chirp = coeffs.b.norm() / coeffs.b.re.abs();
    let k =
        ((2 * n + 1) as f64).sqrt() * chirp / coeffs.position_width(0) + pc.abs() / params.hbar();
    (center, half_width, k)
}

fn points_for(span: f64, dq: f64) -> usize {
    let needed = (span / dq).ceil();
    if needed.is_finite() {
        needed.min(MAX_GRID_POINTS as f64) as usize + 1
    } else {
        MAX_GRID_POINTS
    }
}

/// Fixed grid for propagating `wave` over `[t0, t1]`: wide enough for every
/// sampled time and fine enough for the largest wave number among them.
pub fn window_grid(wave: &WaveFunction, t0: f64, t1: f64, min_points: usize) -> GridSpec {
    let (mut lo, mut hi, mut k_max) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for j in 0..=16 {
        let t = t0 + (t1 - t0) * j as f64 / 16.0;
        let (center, half_width, k) = support(wave.params(), &wave.spec_at(t), t);
        lo = lo.min(center - half_width);
        hi = hi.max(center + half_width);
        k_max = k_max.max(k);
    }
    let points = points_for(hi - lo, PROPAGATION_RESOLUTION / k_max);
    GridSpec::new(lo, hi, min_points.max(points))
}
