use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every pass/fail threshold used by [`validate`](crate::oracle::validate::validate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub wronskian: f64,
    pub normalization: f64,
    pub orthogonality: f64,
    pub residual: f64,
    pub moments_relative: f64,
    pub hamiltonian_relative: f64,
    pub ladder_vacuum: f64,
    pub ladder_lowering: f64,
    pub bogoliubov: f64,
    pub coherent_moments: f64,
    pub coherent_uncertainty: f64,
    pub cn_fidelity: f64,
    pub cn_norm: f64,
    pub sim_wave: f64,
    pub time_average: f64,
    pub closed_form: f64,
    pub constancy: f64,
    pub lower_bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            wronskian: 1e-12,
            normalization: 1e-10,
            orthogonality: 1e-9,
            residual: 1e-5,
            moments_relative: 1e-8,
            hamiltonian_relative: 1e-7,
            ladder_vacuum: 1e-6,
            ladder_lowering: 1e-5,
            bogoliubov: 1e-6,
            coherent_moments: 1e-8,
            coherent_uncertainty: 1e-9,
            cn_fidelity: 1e-6,
            cn_norm: 1e-8,
            sim_wave: 1e-9,
            time_average: 1e-9,
            closed_form: 1e-12,
            constancy: 1e-10,
            lower_bound: 1e-12,
        }
    }
}

impl Tolerances {
    /// Overrides one threshold by its field name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Config {
                field: key.to_string(),
                message: format!("tolerance must be a non-negative number, got {value}"),
            });
        }
        let slot = match key {
            "wronskian" => &mut self.wronskian,
            "normalization" => &mut self.normalization,
            "orthogonality" => &mut self.orthogonality,
            "residual" => &mut self.residual,
            "moments_relative" => &mut self.moments_relative,
            "hamiltonian_relative" => &mut self.hamiltonian_relative,
            "ladder_vacuum" => &mut self.ladder_vacuum,
            "ladder_lowering" => &mut self.ladder_lowering,
            "bogoliubov" => &mut self.bogoliubov,
            "coherent_moments" => &mut self.coherent_moments,
            "coherent_uncertainty" => &mut self.coherent_uncertainty,
            "cn_fidelity" => &mut self.cn_fidelity,
            "cn_norm" => &mut self.cn_norm,
            "sim_wave" => &mut self.sim_wave,
            "time_average" => &mut self.time_average,
            "closed_form" => &mut self.closed_form,
            "constancy" => &mut self.constancy,
            "lower_bound" => &mut self.lower_bound,
            _ => {
                return Err(Error::Config {
                    field: key.to_string(),
                    message: "unknown tolerance".to_string(),
                })
            }
        };
        *slot = value;
        Ok(())
    }
}
