//! Donor species, static environment, hyperfine level structure, pseudo-pure
//! polarization and RF gain.

mod gain;
mod levels;
mod polarization;

pub use gain::{gain_factor, gain_factor_approx, gain_ratio, GainFactor};
pub use levels::{
    breit_rabi_levels, field_parameter, hyperfine_hamiltonian, magnetization_elements, mixing_alpha,
    omega_a_minus_large_x, omega_a_plus_large_x, transition_frequencies, HyperfineLevel,
    MagnetizationElements, TransitionSet,
};
pub use polarization::{
    epsilon_high_temperature, epsilon_pseudo_pure, filling_probabilities, max_magnetization,
    max_magnetization_high_temperature, max_qubits_dynamic,
};

use crate::constants::{hz_to_rad, HBAR};
use crate::error::{invalid, require_non_negative, require_positive, Result};

/// One donor electron / nucleus pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DonorSpecies {
    /// Electron gyromagnetic ratio, rad/s/T.
    pub gamma_e: f64,
    /// Nuclear gyromagnetic ratio, rad/s/T (signed).
    pub gamma_i: f64,
    /// Hyperfine constant A/ℏ, rad/s.
    pub hyperfine_a: f64,
    /// Amplitude A₀ of the secular hyperfine frequency modulation seen by the
    /// nucleus when the electron flips, rad/s.
    pub modulation_a0: f64,
    pub label: String,
}

impl DonorSpecies {
    pub const P31_LABEL: &'static str = "P31-in-Si28";

    /// ³¹P donor in isotopically pure ²⁸Si.
    pub fn p31() -> Self {
        Self {
            gamma_e: 176.08e9,
            gamma_i: 108e6,
            hyperfine_a: hz_to_rad(116e6),
            modulation_a0: 725e6,
            label: Self::P31_LABEL.to_string(),
        }
    }

    pub fn by_label(label: &str) -> Option<Self> {
        (label == Self::P31_LABEL).then(Self::p31)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("gamma_e", self.gamma_e)?;
        require_positive("hyperfine_a", self.hyperfine_a)?;
        require_non_negative("modulation_a0", self.modulation_a0)?;
        if !self.gamma_i.is_finite() || self.gamma_i == 0.0 {
            return Err(invalid("gamma_i", "must be finite and non-zero"));
        }
        Ok(())
    }

    /// Hyperfine energy A, J.
    pub fn hyperfine_energy(&self) -> f64 {
        HBAR * self.hyperfine_a
    }
}

/// Static field, temperatures and drive amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    /// Static field B, T.
    pub b_field: f64,
    /// Lattice temperature T, K.
    pub temp_lattice: f64,
    /// Nuclear spin temperature T_I, K.
    pub temp_nuclear: f64,
    /// Circular RF amplitude b, T.
    pub rf_amp: f64,
    /// Microwave amplitude b_mw, T.
    pub mw_amp: f64,
}

impl Environment {
    /// Environment with the given field and a single temperature, no drives.
    pub fn new(b_field: f64, temp: f64) -> Self {
        Self {
            b_field,
            temp_lattice: temp,
            temp_nuclear: temp,
            rf_amp: 0.0,
            mw_amp: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("b_field", self.b_field)?;
        require_positive("temp_lattice", self.temp_lattice)?;
        require_positive("temp_nuclear", self.temp_nuclear)?;
        require_non_negative("rf_amp", self.rf_amp)?;
        require_non_negative("mw_amp", self.mw_amp)
    }
}
