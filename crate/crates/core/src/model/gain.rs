use super::levels::{field_parameter, mixing_alpha};
use super::{DonorSpecies, Environment};
use crate::constants::HBAR;

/// RF enhancement of the nuclear drive through electron-state mixing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainFactor {
    /// η = A/(2γIℏB).
    pub eta: f64,
    /// Effective RF amplitude b·(√α·γe/γI + √(1−α)), T.
    pub b_eff: f64,
    /// Large-X approximation (1 + η)·b, T.
    pub b_eff_approx: f64,
    /// Nuclear Rabi frequency Ω = γI·b_eff, rad/s.
    pub rabi: f64,
}

impl GainFactor {
    /// b_eff/b from the exact mixing coefficient.
    pub fn ratio(&self, b: f64) -> f64 {
        self.b_eff / b
    }
}

/// Exact b_eff/b = √α·γe/γI + √(1−α).
pub fn gain_ratio(species: &DonorSpecies, env: &Environment) -> f64 {
    let alpha = mixing_alpha(field_parameter(species, env));
    alpha.sqrt() * species.gamma_e / species.gamma_i + (1.0 - alpha).sqrt()
}

/// Approximate b_eff/b = 1 + η.
pub fn gain_factor_approx(species: &DonorSpecies, env: &Environment) -> f64 {
    1.0 + species.hyperfine_energy() / (2.0 * species.gamma_i * HBAR * env.b_field)
}

pub fn gain_factor(species: &DonorSpecies, env: &Environment) -> GainFactor {
    let b = env.rf_amp;
    let b_eff = b * gain_ratio(species, env);
    let approx = gain_factor_approx(species, env);
    GainFactor {
        eta: approx - 1.0,
        b_eff,
        b_eff_approx: approx * b,
        rabi: species.gamma_i * b_eff,
    }
}
