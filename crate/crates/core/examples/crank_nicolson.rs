//! Propagates a squeezed ground state with Crank-Nicolson and compares
//! it with the exact state after one period, halving the step each time.

use std::time::Instant;

use ckstates::oracle::grid::window_grid;
use ckstates::oracle::propagate::crank_nicolson_run;
use ckstates::oracle::quadrature::{fidelity, relative_l2_distance};
use ckstates::{make_params, SqueezeParams, StateSpec, WaveFunction};

fn main() -> ckstates::Result<()> {
    let params = make_params(1.0, 1.2, 1.0, 1.0)?;
    let spec = StateSpec::number(0, SqueezeParams::new(0.5, 1.0)?)?;
    let t1 = params.half_period();
    let wave = WaveFunction::new(&params, &spec, 0.0);
    let grid = window_grid(&wave, 0.0, t1, 0);
    let initial = wave.sample(0.0, &grid.points());
    let exact = wave.sample(t1, &grid.points());
    println!(
        "grid: {} points on [{:.3}, {:.3}]",
        grid.n_points, grid.q_min, grid.q_max
    );

    for steps in [1000, 2000, 4000, 8000] {
        let start = Instant::now();
        let ev = crank_nicolson_run(&params, &initial, &grid, 0.0, t1, steps)?;
        println!(
            "steps {steps:>5}  L² error {:.3e}  1-F {:.3e}  norm drift {:.1e}  {:.2} s",
            relative_l2_distance(&ev.samples, &exact, &grid)?,
            1.0 - fidelity(&ev.samples, &exact, &grid)?,
            ev.norm_drift(),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
