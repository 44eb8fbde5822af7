//! Exact Gaussian states of the Caldirola-Kanai oscillator
//! `H(t) = e^{-γt} p²/2m0 + m0 ω0² e^{γt} q²/2` in the underdamped regime,
//! together with an independent grid-based oracle that checks every closed
//! form numerically.
//!
//! * [`modes`]: constants, mode functions `u0`, `u_{rφ}` and the Wronskian.
//! * [`states`]: squeezed number states and coherent states.
//! * [`observables`]: `θ_γ`, `σ0`, uncertainty products and `⟨H⟩`.
//! * [`oracle`]: quadrature, finite differences, Crank-Nicolson, validation.
//! * [`cli`]: the table-producing commands behind the `ckstates` binary.

pub mod cli;
pub mod error;
pub mod modes;
pub mod observables;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use modes::{
    make_params, mode_u0, mode_u_rphi, special_squeeze, squeeze_from_mode, ModeValue,
    PhysicalParams, SqueezeParams,
};
pub use observables::{
    coherent_hamiltonian_expectation, hamiltonian_expectation, sigma0, theta_gamma,
    uncertainty_product, uncertainty_time_avg, AngleGamma, UncertaintyRecord,
};
pub use states::{
    coherent_trajectory, eval_coherent_state, eval_number_state, gauss_coeffs, hermite,
    GaussCoeffs, StateKind, StateSpec, WaveFunction, WaveSample,
};
