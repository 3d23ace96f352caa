//! Physical constants and unit conversions.

use std::f64::consts::PI;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Vacuum permeability, T²·m³/J.
pub const MU0: f64 = 4.0 * PI * 1e-7;
/// Vacuum permeability in T²·cm³/J, the convention of the readout formulas.
/// Only used for display and cross-checks; internal formulas use [`MU0`].
pub const MU0_MIXED: f64 = 4.0 * PI * 1e-1;

pub const CM: f64 = 1e-2;
pub const CM2: f64 = 1e-4;
pub const CM3: f64 = 1e-6;
pub const NM: f64 = 1e-9;
pub const UM: f64 = 1e-6;
pub const MHZ: f64 = 1e6;

/// Angular frequency (rad/s) of a cyclic frequency in Hz.
pub fn hz_to_rad(f_hz: f64) -> f64 {
    2.0 * PI * f_hz
}

/// Cyclic frequency (Hz) of an angular frequency in rad/s.
pub fn rad_to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

/// ℏω/kT for an angular frequency and temperature.
pub fn reduced_energy(omega: f64, temp: f64) -> f64 {
    HBAR * omega / (K_B * temp)
}
