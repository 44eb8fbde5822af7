//! Runs the oracle over a small lattice and prints the report summary
//! plus every non-passing entry.

use ckstates::make_params;
use ckstates::oracle::{validate, Schedule, Status};

fn main() -> ckstates::Result<()> {
    let base = make_params(1.0, 1.2, 1.0, 1.0)?;
    let schedule = Schedule::lattice(&[0.4, 1.2], &[0.0, 0.5], &[1.0]);
    let report = validate(&base, &schedule);

    let s = &report.summary;
    println!(
        "{} entries: {} passed, {} failed, {} skipped, {} info",
        s.total, s.passed, s.failed, s.skipped, s.info
    );
    for e in report.entries.iter().filter(|e| e.status != Status::Pass) {
        let at: Vec<String> = e
            .parameter_tuple
            .iter()
            .map(|p| format!("{}={}", p.name, p.value))
            .collect();
        println!(
            "{:?} {} [{}] measured {:.4e} expected {:.4e}",
            e.status,
            e.check_name,
            at.join(" "),
            e.measured,
            e.expected
        );
    }
    Ok(())
}
