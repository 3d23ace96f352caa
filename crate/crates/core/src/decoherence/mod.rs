//! Adiabatic single-qubit dephasing from Gaussian frequency noise with an
//! exponential correlation function.

mod channel;
mod density;
mod thresholds;

pub use channel::{
    adiabaticity_check, classify_regime, decrement, decrement_long_time, decrement_short_time, dephasing_time,
    ChannelKind, DephasingRegime, NoiseChannel,
};
pub use density::{dephase_density, dephased_eigenvalues, BlochVector};
pub use thresholds::{
    allowed_concentration, dipolar_coefficient_mc, hyperfine_variance, hyperfine_variance_approx,
    impurity_variance, required_field_over_temp, FieldOverTemp, ImpuritySpec, McEstimate, DIPOLAR_COEFFICIENT,
};
