//! Runs the registered closed-form-versus-oracle checks over a lattice of
//! `(γ, r, φ)` points and assembles a deterministic [`ValidationReport`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::modes::{
    make_params, mode_u_rphi, special_squeeze, special_squeeze_first_quadrant, PhysicalParams,
    SqueezeParams,
};
use crate::observables::{
    hamiltonian_expectation, sigma0, sigma0_forms, uncertainty_product, uncertainty_time_avg,
};
use crate::oracle::grid::{make_grid_with, window_grid, GridSpec, MIN_GRID_POINTS};
use crate::oracle::ladder::{apply_annihilation, apply_bogoliubov_annihilation};
use crate::oracle::propagate::crank_nicolson_run;
use crate::oracle::quadrature::{
    fidelity, inner_product, moments, norm_squared, relative_l2_distance,
};
use crate::oracle::report::{Entry, ValidationReport};
use crate::oracle::residual::residual_of;
use crate::oracle::tolerances::Tolerances;
use crate::states::{
    coherent_trajectory, hermite, BConvention, StateSpec, ThetaBranch, WaveFunction,
};

/// Crank-Nicolson steps for one period `π/ω` of a weakly squeezed state.
pub const CN_STEPS_PER_PERIOD: usize = 4000;

/// Steps for one period at squeeze `r`: `4000·⌈cosh(2r)/2⌉`. The energy
/// spread grows like `cosh 2r`, and with it the time-stepping error.
pub fn cn_steps(r: f64) -> usize {
    CN_STEPS_PER_PERIOD * ((0.5 * (2.0 * r).cosh()).ceil() as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Wronskian,
    Normalization,
    Orthogonality,
    Residual,
    MomentsVsClosedForm,
    HamiltonianVsQuadrature,
    LadderAction,
    CoherentContracts,
    CrankNicolson,
    SimWave,
    TimeAverage,
    GmusConstancy,
    HeisenbergBound,
    GmusLowerBound,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Wronskian,
        Check::Normalization,
        Check::Orthogonality,
        Check::Residual,
        Check::MomentsVsClosedForm,
        Check::HamiltonianVsQuadrature,
        Check::LadderAction,
        Check::CoherentContracts,
        Check::CrankNicolson,
        Check::SimWave,
        Check::TimeAverage,
        Check::GmusConstancy,
        Check::HeisenbergBound,
        Check::GmusLowerBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Wronskian => "wronskian",
            Check::Normalization => "normalization",
            Check::Orthogonality => "orthogonality",
            Check::Residual => "residual",
            Check::MomentsVsClosedForm => "moments_vs_closed_form",
            Check::HamiltonianVsQuadrature => "hamiltonian_vs_quadrature",
            Check::LadderAction => "ladder_action",
            Check::CoherentContracts => "coherent_contracts",
            Check::CrankNicolson => "crank_nicolson",
            Check::SimWave => "sim_wave",
            Check::TimeAverage => "time_average",
            Check::GmusConstancy => "gmus_constancy",
            Check::HeisenbergBound => "heisenberg_bound",
            Check::GmusLowerBound => "gmus_lower_bound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub gamma: f64,
    pub r: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub points: Vec<LatticePoint>,
    pub checks: Vec<Check>,
}

impl Schedule {
    pub fn empty() -> Self {
        Self {
            points: Vec::new(),
            checks: Vec::new(),
        }
    }

    /// Every check at `(γ, 0, 0)`, `(γ, 0.5, 1)` and `(γ, 1, π)`.
    pub fn default_for(params: &PhysicalParams) -> Self {
        let gamma = params.gamma();
        Self {
            points: [(0.0, 0.0), (0.5, 1.0), (1.0, PI)]
                .into_iter()
                .map(|(r, phi)| LatticePoint { gamma, r, phi })
                .collect(),
            checks: Check::ALL.to_vec(),
        }
    }

    /// All combinations of the given values, every check.
    pub fn lattice(gammas: &[f64], rs: &[f64], phis: &[f64]) -> Self {
        let mut points = Vec::new();
        for &gamma in gammas {
            for &r in rs {
                for &phi in phis {
                    points.push(LatticePoint { gamma, r, phi });
                }
            }
        }
        Self {
            points,
            checks: Check::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationOptions {
    pub tolerances: Tolerances,
    /// Width convention used for every evaluated state.
    pub convention: BConvention,
    pub min_grid_points: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            convention: BConvention::Normalizable,
            min_grid_points: MIN_GRID_POINTS,
        }
    }
}

/// `m0`, `ω0` and `ħ` come from `base`; `γ` from each lattice point.
pub fn validate(base: &PhysicalParams, schedule: &Schedule) -> ValidationReport {
    validate_with(base, schedule, &ValidationOptions::default())
}

pub fn validate_with(
    base: &PhysicalParams,
    schedule: &Schedule,
    options: &ValidationOptions,
) -> ValidationReport {
    let jobs: Vec<(Check, LatticePoint)> = schedule
        .checks
        .iter()
        .flat_map(|&c| schedule.points.iter().map(move |&p| (c, p)))
        .collect();
    let entries: Vec<Entry> = jobs
        .par_iter()
        .flat_map_iter(|&(check, point)| run_check(base, check, point, options))
        .collect();
    ValidationReport::new(base, entries)
}

struct Ctx<'a> {
    params: PhysicalParams,
    squeeze: SqueezeParams,
    point: LatticePoint,
    options: &'a ValidationOptions,
}

impl Ctx<'_> {
    fn tol(&self) -> &Tolerances {
        &self.options.tolerances
    }

    fn tuple(&self, extra: &[(&'static str, f64)]) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("gamma", self.point.gamma),
            ("r", self.point.r),
            ("phi", self.point.phi),
        ];
        v.extend_from_slice(extra);
        v
    }

    fn wave(&self, spec: &StateSpec, t: f64) -> WaveFunction {
        WaveFunction::new(&self.params, spec, t)
            .with_branch(ThetaBranch::Continuous)
            .with_convention(self.options.convention)
    }

    fn number(&self, n: usize) -> StateSpec {
        StateSpec::number(n, self.squeeze).expect("n within the Hermite range")
    }

    fn grid(&self, spec: &StateSpec, t: f64) -> GridSpec {
        make_grid_with(&self.params, spec, t, self.options.min_grid_points)
    }
}

fn run_check(
    base: &PhysicalParams,
    check: Check,
    point: LatticePoint,
    options: &ValidationOptions,
) -> Vec<Entry> {
    let tuple = [("gamma", point.gamma), ("r", point.r), ("phi", point.phi)];
    let params = match make_params(base.m0(), point.gamma, base.omega0(), base.hbar()) {
        Ok(p) => p,
        Err(e) => return vec![Entry::skipped(check.name(), &tuple, e.to_string())],
    };
    let squeeze = match SqueezeParams::new(point.r, point.phi) {
        Ok(s) => s,
        Err(e) => return vec![Entry::skipped(check.name(), &tuple, e.to_string())],
    };
    let ctx = Ctx {
        params,
        squeeze,
        point,
        options,
    };
    match check {
        Check::Wronskian => wronskian(&ctx),
        Check::Normalization => normalization(&ctx),
        Check::Orthogonality => orthogonality(&ctx),
        Check::Residual => residual(&ctx),
        Check::MomentsVsClosedForm => moments_vs_closed_form(&ctx),
        Check::HamiltonianVsQuadrature => hamiltonian_vs_quadrature(&ctx),
        Check::LadderAction => ladder_action(&ctx),
        Check::CoherentContracts => coherent_contracts(&ctx),
        Check::CrankNicolson => crank_nicolson(&ctx),
        Check::SimWave => sim_wave(&ctx),
        Check::TimeAverage => time_average(&ctx),
        Check::GmusConstancy => gmus_constancy(&ctx),
        Check::HeisenbergBound => heisenberg_bound(&ctx),
        Check::GmusLowerBound => gmus_lower_bound(&ctx),
    }
}

fn wronskian(ctx: &Ctx) -> Vec<Entry> {
    let p = &ctx.params;
    let horizon = if p.gamma() > 0.0 {
        10.0 / p.gamma()
    } else {
        10.0 / p.omega0()
    };
    let worst = (0..=32)
        .map(|k| {
            let t = horizon * k as f64 / 32.0;
            mode_u_rphi(p, &ctx.squeeze, t).wronskian_deviation(p)
        })
        .fold(0.0, f64::max);
    vec![Entry::at_most(
        "wronskian",
        &ctx.tuple(&[]),
        worst,
        ctx.tol().wronskian,
    )]
}

fn normalization(ctx: &Ctx) -> Vec<Entry> {
    (0..=8)
        .map(|n| {
            let spec = ctx.number(n);
            let worst = [0.0, 0.37, 2.0]
                .iter()
                .map(|&t| {
                    let grid = ctx.grid(&spec, t);
                    let psi = ctx.wave(&spec, t).sample(t, &grid.points());
                    (norm_squared(&psi, &grid).unwrap_or(f64::NAN) - 1.0).abs()
                })
                .fold(0.0, f64::max);
            Entry::at_most(
                "normalization",
                &ctx.tuple(&[("n", n as f64)]),
                worst,
                ctx.tol().normalization,
            )
        })
        .collect()
}

fn orthogonality(ctx: &Ctx) -> Vec<Entry> {
    let t = 0.37;
    let grid = ctx.grid(&ctx.number(5), t);
    let qs = grid.points();
    let states: Vec<Vec<Complex64>> = (0..=5)
        .map(|n| ctx.wave(&ctx.number(n), t).sample(t, &qs))
        .collect();
    let mut worst: f64 = 0.0;
    for m in 0..=5 {
        for n in m..=5 {
            let overlap = inner_product(&states[m], &states[n], &grid)
                .unwrap_or(Complex64::new(f64::NAN, 0.0));
            let target = if m == n { 1.0 } else { 0.0 };
            worst = worst.max((overlap - target).norm());
        }
    }
    vec![Entry::at_most(
        "orthogonality",
        &ctx.tuple(&[("t", t)]),
        worst,
        ctx.tol().orthogonality,
    )]
}

fn residual(ctx: &Ctx) -> Vec<Entry> {
    let t = 0.8;
    let mut specs: Vec<(Vec<(&'static str, f64)>, StateSpec)> = [0usize, 1, 2, 4]
        .iter()
        .map(|&n| (ctx.tuple(&[("n", n as f64), ("t", t)]), ctx.number(n)))
        .collect();
    let coherent = StateSpec::coherent(1.0, -0.5, ctx.squeeze).expect("finite displacement");
    specs.push((ctx.tuple(&[("qc", 1.0), ("pc", -0.5), ("t", t)]), coherent));
    specs
        .into_iter()
        .map(|(tuple, spec)| {
            let grid = ctx.grid(&spec, t);
            let res = residual_of(&ctx.wave(&spec, t), t, &grid).unwrap_or(f64::NAN);
            Entry::at_most("residual", &tuple, res, ctx.tol().residual)
        })
        .collect()
}

fn moments_vs_closed_form(ctx: &Ctx) -> Vec<Entry> {
    let mut out = Vec::new();
    for n in [0usize, 1, 2, 4] {
        for t in [0.0, 0.7, 2.3] {
            let spec = ctx.number(n);
            let grid = ctx.grid(&spec, t);
            let psi = ctx.wave(&spec, t).sample(t, &grid.points());
            let closed = uncertainty_product(&ctx.params, n, &ctx.squeeze, t).expect("n in range");
            let rel = match moments(&psi, &grid, &ctx.params, t) {
                Ok(m) => (m.raw_uncertainty() - closed.product).abs() / closed.product,
                Err(_) => f64::NAN,
            };
            out.push(Entry::at_most(
                "moments_vs_closed_form",
                &ctx.tuple(&[("n", n as f64), ("t", t)]),
                rel,
                ctx.tol().moments_relative,
            ));
        }
    }
    out
}

fn hamiltonian_vs_quadrature(ctx: &Ctx) -> Vec<Entry> {
    let t = 0.9;
    (0..=4)
        .map(|n| {
            let spec = ctx.number(n);
            let grid = ctx.grid(&spec, t);
            let psi = ctx.wave(&spec, t).sample(t, &grid.points());
            let closed =
                hamiltonian_expectation(&ctx.params, n, &ctx.squeeze, t).expect("n in range");
            let rel = moments(&psi, &grid, &ctx.params, t)
                .map(|m| (m.energy - closed).abs() / closed)
                .unwrap_or(f64::NAN);
            Entry::at_most(
                "hamiltonian_vs_quadrature",
                &ctx.tuple(&[("n", n as f64), ("t", t)]),
                rel,
                ctx.tol().hamiltonian_relative,
            )
        })
        .collect()
}

fn ladder_action(ctx: &Ctx) -> Vec<Entry> {
    let t = 0.4;
    let grid = ctx.grid(&ctx.number(4), t);
    let qs = grid.points();
    let states: Vec<Vec<Complex64>> = (0..=4)
        .map(|n| ctx.wave(&ctx.number(n), t).sample(t, &qs))
        .collect();
    let p = &ctx.params;
    let s = &ctx.squeeze;
    let mut out = Vec::new();

    let vacuum = apply_annihilation(p, s, t, &states[0], &grid)
        .and_then(|v| Ok((norm_squared(&v, &grid)? / norm_squared(&states[0], &grid)?).sqrt()));
    out.push(Entry::at_most(
        "ladder_vacuum",
        &ctx.tuple(&[("n", 0.0), ("t", t)]),
        vacuum.unwrap_or(f64::NAN),
        ctx.tol().ladder_vacuum,
    ));
    for n in 1..=4 {
        let lowered = apply_annihilation(p, s, t, &states[n], &grid).and_then(|v| {
            let target: Vec<Complex64> = states[n - 1]
                .iter()
                .map(|x| x * (n as f64).sqrt())
                .collect();
            relative_l2_distance(&v, &target, &grid)
        });
        out.push(Entry::at_most(
            "ladder_lowering",
            &ctx.tuple(&[("n", n as f64), ("t", t)]),
            lowered.unwrap_or(f64::NAN),
            ctx.tol().ladder_lowering,
        ));
    }
    let bogoliubov = apply_annihilation(p, s, t, &states[2], &grid).and_then(|direct| {
        let combined = apply_bogoliubov_annihilation(p, s, t, &states[2], &grid)?;
        relative_l2_distance(&combined, &direct, &grid)
    });
    out.push(Entry::at_most(
        "ladder_bogoliubov",
        &ctx.tuple(&[("n", 2.0), ("t", t)]),
        bogoliubov.unwrap_or(f64::NAN),
        ctx.tol().bogoliubov,
    ));
    out
}

fn coherent_contracts(ctx: &Ctx) -> Vec<Entry> {
    let t = 0.8;
    let mut out = Vec::new();
    for alpha in [Complex64::new(0.6, -0.3), Complex64::new(-1.2, 0.8)] {
        let (qc, pc) = coherent_trajectory(&ctx.params, &ctx.squeeze, alpha, t);
        let spec = StateSpec::coherent(qc, pc, ctx.squeeze).expect("finite displacement");
        let grid = ctx.grid(&spec, t);
        let psi = ctx.wave(&spec, t).sample(t, &grid.points());
        let tuple = ctx.tuple(&[("alpha_re", alpha.re), ("alpha_im", alpha.im), ("t", t)]);
        let closed = uncertainty_product(&ctx.params, 0, &ctx.squeeze, t)
            .expect("n = 0")
            .product;
        let (dq_mean, dp_mean, du) = match moments(&psi, &grid, &ctx.params, t) {
            Ok(m) => (
                (m.q - qc).abs() / qc.abs().max(1.0),
                (m.p - pc).abs() / pc.abs().max(1.0),
                (m.uncertainty() - closed).abs() / closed,
            ),
            Err(_) => (f64::NAN, f64::NAN, f64::NAN),
        };
        let tol = ctx.tol();
        out.push(Entry::at_most(
            "coherent_mean_q",
            &tuple,
            dq_mean,
            tol.coherent_moments,
        ));
        out.push(Entry::at_most(
            "coherent_mean_p",
            &tuple,
            dp_mean,
            tol.coherent_moments,
        ));
        out.push(Entry::at_most(
            "coherent_uncertainty",
            &tuple,
            du,
            tol.coherent_uncertainty,
        ));
    }
    out
}

fn crank_nicolson(ctx: &Ctx) -> Vec<Entry> {
    let p = &ctx.params;
    let spec = ctx.number(0);
    let (t0, t1) = (0.0, p.half_period());
    let wave = ctx.wave(&spec, t0);
    let grid = window_grid(&wave, t0, t1, ctx.options.min_grid_points);
    let initial = wave.sample(t0, &grid.points());
    let steps = cn_steps(ctx.squeeze.r());
    let tuple = ctx.tuple(&[("n", 0.0), ("steps", steps as f64)]);
    match crank_nicolson_run(p, &initial, &grid, t0, t1, steps) {
        Ok(ev) => {
            let exact = wave.sample(t1, &grid.points());
            let deficit = fidelity(&ev.samples, &exact, &grid)
                .map(|f| 1.0 - f)
                .unwrap_or(f64::NAN);
            let drift = ev.norm_drift();
            vec![
                Entry::at_most("cn_fidelity", &tuple, deficit, ctx.tol().cn_fidelity)
                    .with_note(format!("{} grid points", grid.n_points)),
                Entry::at_most("cn_norm_drift", &tuple, drift, ctx.tol().cn_norm),
            ]
        }
        Err(e) => vec![
            Entry::failed("cn_fidelity", &tuple, e.to_string()),
            Entry::failed("cn_norm_drift", &tuple, e.to_string()),
        ],
    }
}

/// Undamped oscillator eigenfunction of frequency `ω` and mass `m0`.
pub fn oscillator_eigenfunction(params: &PhysicalParams, n: usize, q: f64) -> f64 {
    let k = params.m0() * params.omega() / params.hbar();
    let norm: f64 = (1..=n).fold(1.0, |acc, j| acc / (2.0 * j as f64).sqrt());
    norm * (k / PI).powf(0.25)
        * hermite(n, k.sqrt() * q).unwrap_or(f64::NAN)
        * (-0.5 * k * q * q).exp()
}

/// `max_q |Ψ_n(q, 0, r, φ) - e^{-iχ(n+½)} ψ_n(q)|` for the undamped `ψ_n`.
pub fn sim_wave_deviation(
    params: &PhysicalParams,
    squeeze: &SqueezeParams,
    n: usize,
    phase: f64,
    convention: BConvention,
    min_points: usize,
) -> f64 {
    let spec = StateSpec::number(n, *squeeze).expect("n within range");
    let grid = make_grid_with(params, &spec, 0.0, min_points);
    let wave = WaveFunction::new(params, &spec, 0.0).with_convention(convention);
    let factor = Complex64::from_polar(1.0, -phase * (n as f64 + 0.5));
    grid.points()
        .iter()
        .map(|&q| (wave.eval(0.0, q) - factor * oscillator_eigenfunction(params, n, q)).norm())
        .fold(0.0, f64::max)
}

fn sim_wave(ctx: &Ctx) -> Vec<Entry> {
    let p = &ctx.params;
    let gamma_only = [("gamma", ctx.point.gamma)];
    let chosen = match special_squeeze(p) {
        Ok(s) => s,
        Err(e) => {
            return vec![Entry::skipped(
                "sim_wave_exact_phase",
                &gamma_only,
                e.to_string(),
            )]
        }
    };
    let first = special_squeeze_first_quadrant(p).expect("gamma > 0");
    let exact_phase = (p.gamma() / (4.0 * p.omega())).atan();
    let literal_phase = p.gamma() / (4.0 * p.omega());
    let conv = ctx.options.convention;
    let min_points = ctx.options.min_grid_points;

    let first_dev = (0..=2)
        .map(|n| sim_wave_deviation(p, &first, n, exact_phase, conv, min_points))
        .fold(0.0, f64::max);
    let mut out = vec![Entry::info(
        "special_squeeze_branch",
        &gamma_only,
        chosen.phi(),
        first.phi(),
    )
    .with_note(format!(
        "first-quadrant branch deviates by {first_dev:.3e}; using phi0 + pi"
    ))];
    for n in 0..=2 {
        let tuple = [("gamma", ctx.point.gamma), ("n", n as f64)];
        let exact = sim_wave_deviation(p, &chosen, n, exact_phase, conv, min_points);
        out.push(
            Entry::at_most("sim_wave_exact_phase", &tuple, exact, ctx.tol().sim_wave)
                .with_note(format!("phase atan(gamma/4 omega) = {exact_phase:.12}")),
        );
        let literal = sim_wave_deviation(p, &chosen, n, literal_phase, conv, min_points);
        out.push(
            Entry::info("sim_wave_literal_phase", &tuple, literal, 0.0)
                .with_note(format!("phase gamma/4 omega = {literal_phase:.12}")),
        );
    }
    out
}

fn time_average(ctx: &Ctx) -> Vec<Entry> {
    let avg = uncertainty_time_avg(&ctx.params, 0, &ctx.squeeze, 4096).expect("n = 0");
    let floor = 0.5 * ctx.params.hbar() * sigma0(&ctx.params);
    let tuple = ctx.tuple(&[("n", 0.0)]);
    let mut out = vec![Entry::at_least(
        "time_average_bound",
        &tuple,
        avg.numeric,
        floor,
        ctx.tol().time_average,
    )];
    if let Some(closed) = avg.closed_form {
        out.push(
            Entry::info(
                "time_average_closed_form_gap",
                &tuple,
                avg.numeric - closed,
                0.0,
            )
            .with_note(format!(
                "numeric {:.12}, closed form {:.12}",
                avg.numeric, closed
            )),
        );
    }
    out
}

fn gmus_constancy(ctx: &Ctx) -> Vec<Entry> {
    let p = &ctx.params;
    let bound = 0.5 * p.hbar() * sigma0(p);
    let worst = (0..64)
        .map(|k| {
            let t = 2.0 * p.half_period() * k as f64 / 64.0;
            let rec = uncertainty_product(p, 0, &SqueezeParams::NONE, t).expect("n = 0");
            (rec.product - bound).abs()
        })
        .fold(0.0, f64::max);
    let (sec, direct) = sigma0_forms(p);
    let gamma_only = [("gamma", ctx.point.gamma)];
    vec![
        Entry::at_most("gmus_constancy", &gamma_only, worst, ctx.tol().constancy),
        Entry::at_most(
            "sigma0_forms",
            &gamma_only,
            (sec - direct).abs(),
            ctx.tol().closed_form,
        ),
    ]
}

fn min_ratio(ctx: &Ctx, n: usize, floor: f64) -> f64 {
    let p = &ctx.params;
    (0..32)
        .map(|k| {
            let t = p.half_period() * k as f64 / 32.0;
            uncertainty_product(p, n, &ctx.squeeze, t)
                .expect("n in range")
                .product
                / floor
        })
        .fold(f64::INFINITY, f64::min)
}

fn heisenberg_bound(ctx: &Ctx) -> Vec<Entry> {
    [0usize, 1, 4]
        .iter()
        .map(|&n| {
            let floor = ctx.params.hbar() * (n as f64 + 0.5);
            Entry::at_least(
                "heisenberg_bound",
                &ctx.tuple(&[("n", n as f64)]),
                min_ratio(ctx, n, floor),
                1.0,
                ctx.tol().lower_bound,
            )
        })
        .collect()
}

fn gmus_lower_bound(ctx: &Ctx) -> Vec<Entry> {
    let floor = 0.5 * ctx.params.hbar() * sigma0(&ctx.params);
    vec![Entry::info(
        "gmus_lower_bound",
        &ctx.tuple(&[("n", 0.0)]),
        min_ratio(ctx, 0, floor),
        1.0,
    )
    .with_note("min over one period of product / (hbar sigma0 / 2)")]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::report::Status;

    fn pstar() -> PhysicalParams {
        make_params(1.0, 1.2, 1.0, 1.0).unwrap()
    }

    #[test]
    fn empty_schedule_gives_empty_report() {
        let report = validate(&pstar(), &Schedule::empty());
        assert!(report.entries.is_empty());
        assert_eq!(report.summary.total, 0);
    }

    #[test]
    fn out_of_range_gamma_is_skipped() {
        let schedule = Schedule {
            points: vec![LatticePoint {
                gamma: 2.5,
                r: 0.0,
                phi: 0.0,
            }],
            checks: vec![Check::Wronskian, Check::Residual],
        };
        let report = validate(&pstar(), &schedule);
        assert_eq!(report.summary.skipped, 2);
        assert!(report
            .entries
            .iter()
            .all(|e| e.status == Status::Skipped && e.note.is_some()));
        assert!(report.all_passed());
    }

    #[test]
    fn flipped_width_fails_residual_and_normalization() {
        let p = pstar();
        let schedule = Schedule {
            points: vec![LatticePoint {
                gamma: 1.2,
                r: 0.5,
                phi: 1.0,
            }],
            checks: vec![Check::Residual, Check::Normalization],
        };
        let options = ValidationOptions {
            convention: BConvention::FlippedSign,
            ..ValidationOptions::default()
        };
        let report = validate_with(&p, &schedule, &options);
        assert!(!report.all_passed());
        assert!(report
            .entries_named("residual")
            .all(|e| !e.pass && e.measured > 0.1));
        assert!(report.entries_named("normalization").all(|e| !e.pass));
    }

    #[test]
    fn cheap_checks_pass_on_the_reference_point() {
        let p = pstar();
        let schedule = Schedule {
            points: vec![LatticePoint {
                gamma: 1.2,
                r: 0.5,
                phi: 1.0,
            }],
            checks: vec![
                Check::Wronskian,
                Check::SimWave,
                Check::GmusConstancy,
                Check::HeisenbergBound,
            ],
        };
        let report = validate(&p, &schedule);
        assert!(report.all_passed(), "{}", report.to_table());
        assert_eq!(report.entries_named("special_squeeze_branch").count(), 1);
    }

    #[test]
    fn report_is_reproducible() {
        let p = pstar();
        let schedule = Schedule {
            points: Schedule::default_for(&p).points,
            checks: vec![Check::Wronskian, Check::Orthogonality, Check::TimeAverage],
        };
        assert_eq!(
            validate(&p, &schedule).to_json(),
            validate(&p, &schedule).to_json()
        );
    }

    #[test]
    fn step_scaling() {
        assert_eq!(cn_steps(0.0), 4000);
        assert_eq!(cn_steps(0.5), 4000);
        assert_eq!(cn_steps(1.0), 8000);
    }
}
