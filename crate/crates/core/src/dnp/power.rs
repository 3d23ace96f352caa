use crate::constants::{CM3, MU0};
use crate::error::{require_positive, Result};
use crate::model::{DonorSpecies, Environment, TransitionSet};

/// Microwave budget for driving the forbidden transition at a target rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationPower {
    /// Lower bound on the incident power, W.
    pub power: f64,
    /// Rotating field b_mw the cavity builds at `power`, T.
    pub b_mw: f64,
    /// (γe b_mw)²τ*⊥S τ∥B at `power`, with τ∥B = 1/W.
    pub saturation_at_bound: f64,
    /// (γe b_mw)²τ*⊥S τ∥B for the environment's `mw_amp`.
    pub saturation_at_env: f64,
    /// Whether the environment's microwave field saturates the transition.
    pub saturated: bool,
}

/// Dephasing time τ*⊥S taken from the inhomogeneous linewidth, τ* = 2/√⟨Δω²⟩.
fn tau_star(linewidth: f64) -> f64 {
    2.0 / linewidth
}

/// Induced rate W_S = (γe b_mw)²τ*⊥S/2.
pub fn pump_rate_estimate(species: &DonorSpecies, b_mw: f64, linewidth: f64) -> f64 {
    (species.gamma_e * b_mw).powi(2) * tau_star(linewidth) / 2.0
}

/// P = ω_S V_r W √⟨Δω²⟩ / (2μ₀ Q_c γe²) with V_r in cm³.
pub fn saturation_power_bound(
    omega_s: f64,
    cavity_volume_cm3: f64,
    cavity_q: f64,
    linewidth: f64,
    pump_rate: f64,
    gamma_e: f64,
) -> f64 {
    omega_s * cavity_volume_cm3 * CM3 * pump_rate * linewidth / (2.0 * MU0 * cavity_q * gamma_e * gamma_e)
}

/// Power bound together with the cavity field and the saturation predicate.
///
/// The saturation inequality is evaluated once as (γe b)²τ*⊥S τ∥B > 1. The
/// alternative form written with W_S and the electron time is the same
/// predicate after τ∥B ↦ τ∥e and (γe b)²τ* ↦ 2W_S.
pub fn saturation_power(
    species: &DonorSpecies,
    env: &Environment,
    transitions: &TransitionSet,
    cavity_volume_cm3: f64,
    cavity_q: f64,
    linewidth: f64,
    pump_rate: f64,
) -> Result<SaturationPower> {
    require_positive("cavity_volume", cavity_volume_cm3)?;
    require_positive("cavity_q", cavity_q)?;
    require_positive("linewidth", linewidth)?;
    require_positive("pump_rate", pump_rate)?;
    require_positive("omega_s", transitions.omega_s)?;
    let omega_s = transitions.omega_s;
    let power = saturation_power_bound(omega_s, cavity_volume_cm3, cavity_q, linewidth, pump_rate, species.gamma_e);
    // Cavity relation P = ω_S b² V_r / (2μ₀ Q_c) inverted for b.
    let b_mw = (2.0 * MU0 * cavity_q * power / (omega_s * cavity_volume_cm3 * CM3)).sqrt();
    let parameter = |b: f64| (species.gamma_e * b).powi(2) * tau_star(linewidth) / pump_rate;
    let saturation_at_env = parameter(env.mw_amp);
    Ok(SaturationPower {
        power,
        b_mw,
        saturation_at_bound: parameter(b_mw),
        saturation_at_env,
        saturated: saturation_at_env > 1.0,
    })
}
