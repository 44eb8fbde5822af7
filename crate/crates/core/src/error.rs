use thiserror::Error;

/// Errors raised by constructors and evaluators in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("not underdamped: gamma = {gamma} must be < 2*omega0 = {}", 2.0 * omega0)]
    NotUnderdamped { gamma: f64, omega0: f64 },

    #[error("mode violates the Wronskian condition: |W - i| = {deviation:e}")]
    WronskianViolation { deviation: f64 },

    #[error("special squeeze phase is undefined for gamma = 0")]
    UndefinedSqueezePhase,

    #[error("Hermite order {n} outside the supported range 0..={max}")]
    HermiteOrder { n: usize, max: usize },

    #[error("operation requires a {expected} state")]
    WrongStateKind { expected: &'static str },

    #[error("Crank-Nicolson needs at least {required} steps per period, got {given}")]
    InsufficientSteps { required: usize, given: usize },

    #[error("boundary leak at t = {t}: mass {mass:e} within the edge points")]
    BoundaryLeak { t: f64, mass: f64 },

    #[error("sample count {samples} does not match grid size {points}")]
    GridMismatch { samples: usize, points: usize },

    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
