//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use ckstates::observables::{hamiltonian_time_avg, sigma0_forms};
use ckstates::oracle::grid::window_grid;
use ckstates::oracle::ladder::{apply_annihilation, apply_bogoliubov_annihilation};
use ckstates::oracle::propagate::crank_nicolson_run;
use ckstates::oracle::quadrature::{fidelity, moments, norm_squared, relative_l2_distance};
use ckstates::oracle::residual::residual_of;
use ckstates::oracle::validate::sim_wave_deviation;
use ckstates::oracle::{make_grid, GridSpec};
use ckstates::states::{alpha_from_phase_point, BConvention, ThetaBranch};
use ckstates::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GAMMAS: [f64; 4] = [0.0, 0.4, 1.2, 1.8];
const RS: [f64; 5] = [0.0, 0.25, 0.5, 1.0, 2.0];
const PHIS: [f64; 5] = [0.0, PI / 4.0, 1.0, PI, 5.0];
const TIMES_PER_PERIOD: usize = 32;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn params(gamma: f64) -> PhysicalParams {
    make_params(1.0, gamma, 1.0, 1.0).unwrap()
}

fn squeeze(r: f64, phi: f64) -> SqueezeParams {
    SqueezeParams::new(r, phi).unwrap()
}

fn period_times(p: &PhysicalParams) -> impl Iterator<Item = f64> + '_ {
    (0..TIMES_PER_PERIOD).map(move |k| p.half_period() * k as f64 / TIMES_PER_PERIOD as f64)
}

fn sampled(p: &PhysicalParams, spec: &StateSpec, t: f64) -> (GridSpec, Vec<Complex64>) {
    let grid = make_grid(p, spec, t);
    let psi = WaveFunction::new(p, spec, t).sample(t, &grid.points());
    (grid, psi)
}

fn wronskian_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let p = params(rng.gen_range(0.0..1.9));
        let s = squeeze(rng.gen_range(0.0..=3.0), rng.gen_range(0.0..TAU));
        let t = rng.gen_range(0.0..=10.0);
        worst = worst.max(mode_u_rphi(&p, &s, t).wronskian_deviation(&p));
    }
    Outcome {
        pass: worst < 1e-12,
        detail: format!("max |W - i| = {worst:.3e} over 200 random points"),
    }
}

fn gmus_constancy() -> Outcome {
    let p = params(1.2);
    let worst = (0..64)
        .map(|k| {
            let t = 2.0 * p.half_period() * k as f64 / 64.0;
            (uncertainty_product(&p, 0, &SqueezeParams::NONE, t)
                .unwrap()
                .product
                - 0.625)
                .abs()
        })
        .fold(0.0, f64::max);
    let (sec, direct) = sigma0_forms(&p);
    let forms = (sec - direct).abs();
    let half_sigma = (0.5 * sec - 0.625).abs();
    Outcome {
        pass: worst < 1e-10 && forms < 1e-12 && half_sigma < 1e-12,
        detail: format!("max |product - 0.625| = {worst:.3e}, |σ0 forms| gap = {forms:.3e}"),
    }
}

fn lower_bound() -> Outcome {
    let mut worst = (f64::INFINITY, 0.0, 0.0, 0.0, 0.0);
    let mut r0_gap: f64 = 0.0;
    let mut heisenberg = f64::INFINITY;
    for gamma in GAMMAS {
        let p = params(gamma);
        let floor = 0.5 * p.hbar() * sigma0(&p);
        for r in RS {
            for phi in PHIS {
                let s = squeeze(r, phi);
                for t in period_times(&p) {
                    for n in 0..=2usize {
                        let product = uncertainty_product(&p, n, &s, t).unwrap().product;
                        let ratio = product / (floor * (2 * n + 1) as f64);
                        if ratio < worst.0 {
                            worst = (ratio, gamma, r, phi, t);
                        }
                        if r == 0.0 {
                            r0_gap = r0_gap.max((ratio - 1.0).abs());
                        }
                        heisenberg = heisenberg.min(product / (n as f64 + 0.5));
                    }
                }
            }
        }
    }
    let (ratio, gamma, r, phi, t) = worst;
    Outcome {
        pass: ratio >= 1.0 - 1e-12 && r0_gap <= 1e-12,
        detail: format!(
            "min product/((ħ/2)σ0(2n+1)) = {ratio:.6} at γ={gamma} r={r} φ={phi:.4} t={t:.4}; \
             r=0 gap {r0_gap:.1e}; min product/(ħ(n+½)) = {heisenberg:.6}"
        ),
    }
}

fn closed_form_vs_quadrature() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [0usize, 1, 2, 4] {
        for r in [0.0, 0.5, 1.5] {
            for t in [0.0, 0.7, 2.3] {
                let p = params(1.2);
                let s = squeeze(r, 1.0);
                let (grid, psi) = sampled(&p, &StateSpec::number(n, s).unwrap(), t);
                let closed = uncertainty_product(&p, n, &s, t).unwrap().product;
                let m = moments(&psi, &grid, &p, t).unwrap();
                worst = worst.max((m.raw_uncertainty() - closed).abs() / closed);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Outcome {
        pass: worst < 1e-8 && elapsed < 30.0,
        detail: format!("max relative gap {worst:.3e} over 36 cases in {elapsed:.2} s"),
    }
}

fn schrodinger_residual() -> Outcome {
    let points = [
        (1.2, 0.0, 0.0, 1.0),
        (1.2, 0.7, 2.0, 0.8),
        (0.4, 0.5, 1.0, 2.0),
        (1.8, 1.0, PI / 4.0, 0.5),
        (0.0, 0.25, 5.0, 1.5),
    ];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (gamma, r, phi, t) in points {
        let p = params(gamma);
        let s = squeeze(r, phi);
        let mut specs: Vec<StateSpec> = (0..=4).map(|n| StateSpec::number(n, s).unwrap()).collect();
        specs.push(StateSpec::coherent(1.0, -0.5, s).unwrap());
        specs.push(StateSpec::coherent(-2.0, 1.5, s).unwrap());
        for spec in specs {
            let grid = make_grid(&p, &spec, t);
            let wave = WaveFunction::new(&p, &spec, t).with_branch(ThetaBranch::Continuous);
            worst = worst.max(residual_of(&wave, t, &grid).unwrap());
            count += 1;
        }
    }
    Outcome {
        pass: worst < 1e-5,
        detail: format!("max relative residual {worst:.3e} over {count} states"),
    }
}

fn crank_nicolson() -> Outcome {
    let start = Instant::now();
    let p = params(1.2);
    let spec = StateSpec::number(0, squeeze(0.5, 1.0)).unwrap();
    let t1 = p.half_period();
    let wave = WaveFunction::new(&p, &spec, 0.0);
    let grid = window_grid(&wave, 0.0, t1, 0);
    let initial = wave.sample(0.0, &grid.points());
    let ev = crank_nicolson_run(&p, &initial, &grid, 0.0, t1, 4000).unwrap();
    let exact = wave.sample(t1, &grid.points());
    let f = fidelity(&ev.samples, &exact, &grid).unwrap();
    let drift = ev.norm_drift();
    let elapsed = start.elapsed().as_secs_f64();
    Outcome {
        pass: f >= 1.0 - 1e-6 && drift < 1e-8 && elapsed < 60.0,
        detail: format!(
            "1 - fidelity = {:.3e}, norm drift {drift:.3e}, {} points, {elapsed:.2} s",
            1.0 - f,
            grid.n_points
        ),
    }
}

fn simple_harmonic_start() -> Outcome {
    let p = params(1.2);
    let s = special_squeeze(&p).unwrap();
    let literal = p.gamma() / (4.0 * p.omega());
    let exact = literal.atan();
    let dev = |phase: f64| {
        (0..=2)
            .map(|n| sim_wave_deviation(&p, &s, n, phase, BConvention::Normalizable, 513))
            .fold(0.0, f64::max)
    };
    let (literal_dev, exact_dev) = (dev(literal), dev(exact));
    Outcome {
        pass: literal_dev < 1e-9,
        detail: format!(
            "phase γ/4ω = {literal:.6}: max deviation {literal_dev:.3e}; \
             phase atan(γ/4ω) = {exact:.6}: max deviation {exact_dev:.3e}"
        ),
    }
}

fn ladder_algebra() -> Outcome {
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for (gamma, r, phi, t) in [
        (1.2, 0.5, 1.0, 0.4),
        (0.4, 1.0, PI / 4.0, 2.0),
        (1.8, 0.0, 0.0, 1.1),
    ] {
        let p = params(gamma);
        let s = squeeze(r, phi);
        let grid = make_grid(&p, &StateSpec::number(4, s).unwrap(), t);
        let qs = grid.points();
        let states: Vec<Vec<Complex64>> = (0..=4)
            .map(|n| WaveFunction::new(&p, &StateSpec::number(n, s).unwrap(), t).sample(t, &qs))
            .collect();
        let lowered0 = apply_annihilation(&p, &s, t, &states[0], &grid).unwrap();
        worst.0 = worst
            .0
            .max((norm_squared(&lowered0, &grid).unwrap()).sqrt());
        for n in 1..=4 {
            let lowered = apply_annihilation(&p, &s, t, &states[n], &grid).unwrap();
            let target: Vec<Complex64> = states[n - 1]
                .iter()
                .map(|v| v * (n as f64).sqrt())
                .collect();
            worst.1 = worst
                .1
                .max(relative_l2_distance(&lowered, &target, &grid).unwrap());
        }
        let direct = apply_annihilation(&p, &s, t, &states[2], &grid).unwrap();
        let combined = apply_bogoliubov_annihilation(&p, &s, t, &states[2], &grid).unwrap();
        worst.2 = worst
            .2
            .max(relative_l2_distance(&combined, &direct, &grid).unwrap());
    }
    Outcome {
        pass: worst.0 < 1e-6 && worst.1 < 1e-5 && worst.2 < 1e-6,
        detail: format!(
            "vacuum {:.3e}, lowering {:.3e}, Bogoliubov {:.3e}",
            worst.0, worst.1, worst.2
        ),
    }
}

fn coherent_contracts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut mean_gap, mut unc_gap) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let p = params(rng.gen_range(0.0..1.9));
        let s = squeeze(rng.gen_range(0.0..=1.5), rng.gen_range(0.0..TAU));
        let alpha = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let t = rng.gen_range(0.0..5.0);
        let (qc, pc) = coherent_trajectory(&p, &s, alpha, t);
        let spec = StateSpec::coherent(qc, pc, s).unwrap();
        let (grid, psi) = sampled(&p, &spec, t);
        let m = moments(&psi, &grid, &p, t).unwrap();
        mean_gap = mean_gap
            .max((m.q - qc).abs() / qc.abs().max(1.0))
            .max((m.p - pc).abs() / pc.abs().max(1.0));
        let n0 = uncertainty_product(&p, 0, &s, t).unwrap().product;
        unc_gap = unc_gap.max((m.uncertainty() - n0).abs() / n0);
        let back = alpha_from_phase_point(&p, &s, t, qc, pc);
        mean_gap = mean_gap.max((back - alpha).norm());
    }
    Outcome {
        pass: mean_gap < 1e-8 && unc_gap < 1e-9,
        detail: format!(
            "mean gap {mean_gap:.3e}, uncertainty gap {unc_gap:.3e} over 10 random points"
        ),
    }
}

fn hamiltonian() -> Outcome {
    let mut worst: f64 = 0.0;
    for (gamma, r, phi, t) in [(1.2, 0.5, 1.0, 0.9), (0.4, 1.0, 5.0, 2.2)] {
        let p = params(gamma);
        let s = squeeze(r, phi);
        for n in 0..=4 {
            let (grid, psi) = sampled(&p, &StateSpec::number(n, s).unwrap(), t);
            let closed = hamiltonian_expectation(&p, n, &s, t).unwrap();
            let m = moments(&psi, &grid, &p, t).unwrap();
            worst = worst.max((m.energy - closed).abs() / closed);
        }
    }
    let mut misplaced = Vec::new();
    for gamma in GAMMAS {
        let p = params(gamma);
        let ground = hamiltonian_time_avg(&p, 0, &SqueezeParams::NONE, 0).unwrap();
        for r in RS {
            for phi in PHIS {
                for n in 0..=4 {
                    if n == 0 && r == 0.0 {
                        continue;
                    }
                    let avg = hamiltonian_time_avg(&p, n, &squeeze(r, phi), 0).unwrap();
                    if avg <= ground {
                        misplaced.push((gamma, r, phi, n));
                    }
                }
            }
        }
    }
    Outcome {
        pass: worst < 1e-7 && misplaced.is_empty(),
        detail: format!(
            "max relative gap {worst:.3e} over 10 points; {} lattice points at or below the n=r=0 average",
            misplaced.len()
        ),
    }
}

fn time_average() -> Outcome {
    let mut margin = f64::INFINITY;
    let mut r0_gap: f64 = 0.0;
    for gamma in GAMMAS {
        let p = params(gamma);
        let floor = 0.5 * p.hbar() * sigma0(&p);
        for r in RS {
            for phi in PHIS {
                let avg = uncertainty_time_avg(&p, 0, &squeeze(r, phi), 0)
                    .unwrap()
                    .numeric;
                margin = margin.min(avg - floor);
                if r == 0.0 {
                    r0_gap = r0_gap.max((avg - floor).abs());
                }
            }
        }
    }
    let p = params(1.2);
    let recorded: Vec<String> = [0.25, 0.5, 1.0]
        .iter()
        .map(|&r| {
            let avg = uncertainty_time_avg(&p, 0, &squeeze(r, 0.0), 0).unwrap();
            format!("r={r}: {:+.4e}", avg.numeric - avg.closed_form.unwrap())
        })
        .collect();
    Outcome {
        pass: margin >= -1e-9 && r0_gap <= 1e-9,
        detail: format!(
            "min(avg - (ħ/2)σ0) = {margin:.3e}, r=0 gap {r0_gap:.1e}; numeric minus closed form {}",
            recorded.join(", ")
        ),
    }
}

fn negative_control() -> Outcome {
    let p = params(1.2);
    let s = squeeze(0.5, 1.0);
    let spec = StateSpec::number(0, s).unwrap();
    let t = 0.8;
    let grid = make_grid(&p, &spec, t);
    let flipped = WaveFunction::new(&p, &spec, t).with_convention(BConvention::FlippedSign);
    let residual = residual_of(&flipped, t, &grid).unwrap();
    let norm = norm_squared(&flipped.sample(t, &grid.points()), &grid).unwrap();
    let mut sink = Vec::new();
    let code = ckstates::cli::run(
        [
            "ckstates",
            "validate",
            "--debug-flip-b",
            "--r",
            "0.5",
            "--phi",
            "1",
        ],
        &mut sink,
        &mut Vec::new(),
    );
    Outcome {
        pass: residual > 0.1 && (norm - 1.0).abs() > 1e-3 && code == 1,
        detail: format!("residual {residual:.3e}, norm {norm:.3e}, validate exit code {code}"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Wronskian invariance", wronskian_invariance),
        ("GMUS constancy", gmus_constancy),
        ("lower-bound property", lower_bound),
        ("closed form vs quadrature", closed_form_vs_quadrature),
        ("Schrödinger residual", schrodinger_residual),
        ("Crank-Nicolson cross-check", crank_nicolson),
        ("simple-harmonic initial condition", simple_harmonic_start),
        ("ladder algebra", ladder_algebra),
        ("coherent-state contracts", coherent_contracts),
        ("Hamiltonian expectation", hamiltonian),
        ("time-average inequality", time_average),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} [PRIMARY] {verdict}  {title}: {}",
            i + 1,
            outcome.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
