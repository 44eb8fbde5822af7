//! Grid-based oracle, independent of the closed forms: Simpson quadrature,
//! finite-difference momentum and ladder operators, the Schrödinger residual
//! and a Crank-Nicolson propagator.

pub mod grid;
pub mod ladder;
pub mod propagate;
pub mod quadrature;
pub mod report;
pub mod residual;
pub mod tolerances;
pub mod validate;

pub use grid::{make_grid, GridSpec};
pub use ladder::{apply_annihilation, apply_creation};
pub use propagate::crank_nicolson_evolve;
pub use quadrature::{moments, Moments};
pub use report::{Entry, Status, ValidationReport};
pub use residual::schrodinger_residual;
pub use tolerances::Tolerances;
pub use validate::{validate, validate_with, Check, LatticePoint, Schedule, ValidationOptions};
