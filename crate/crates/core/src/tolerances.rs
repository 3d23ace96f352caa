//! Acceptance tolerances shared by the test suite and the `verify` command.

/// Relative tolerance on ω_A±/2π against the quoted 75 MHz and 41 MHz.
pub const TRANSITION_REL: f64 = 0.01;
/// Relative error of closed-form levels against numeric diagonalization.
pub const BREIT_RABI_REL: f64 = 1e-10;
/// Relative tolerance on b_eff/b against the quoted gain values.
pub const GAIN_REL: f64 = 0.02;
/// Multiplicative band around the quoted liquid and ensemble crossovers.
pub const SNR_FACTOR: f64 = 3.0;
/// Allowed deviation, in blocks, of the square-plate solver from n ≈ 16, p ≈ 63.
pub const BLOCK_COUNT_ABS: i64 = 1;
/// Minimum terminal nuclear polarization under saturation.
pub const DNP_MIN_POLARIZATION: f64 = 0.99;
/// Drift of the population sum along a trajectory.
pub const DNP_NORMALIZATION: f64 = 1e-10;
/// Distance of the terminal state from the algebraic fixed point.
pub const DNP_FIXED_POINT: f64 = 1e-6;
/// Multiplicative band around the quoted 1 mW microwave power.
pub const POWER_FACTOR: f64 = 3.0;
/// Admissible B/T thresholds at 1 s⁻¹, T/K.
pub const FIELD_OVER_TEMP_RANGE: (f64, f64) = (27.0, 34.0);
/// Multiplicative band for the impurity concentration and its coefficient.
pub const IMPURITY_FACTOR: f64 = 2.0;
/// Closed-form decrement against quadrature.
pub const DECREMENT_REL: f64 = 1e-8;
/// Quadratic-regime reduction at t = τ₁/100.
pub const QUADRATIC_REGIME_REL: f64 = 0.01;
/// Monte-Carlo agreement, in standard errors.
pub const MC_STANDARD_ERRORS: f64 = 3.0;
/// Discrete against continuum readout signal.
pub const SIGNAL_REL: f64 = 0.10;
/// Admissible range of the "non-essential" continuum factor.
pub const CONTINUUM_FACTOR_RANGE: (f64, f64) = (0.5, 20.0);
