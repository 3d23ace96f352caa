//! Four-level rate equations for dynamic nuclear polarization through the
//! solid effect, and the microwave power budget.
//!
//! Population vectors are ordered (p(1,1), p(1,0), p(1,−1), p(0,0)).

mod integrator;
mod power;
mod rates;

pub use integrator::{integrate_dnp, integrate_linear, write_trajectory_csv, IntegratorStats, Trajectory};
pub use power::{pump_rate_estimate, saturation_power, saturation_power_bound, SaturationPower};
pub use rates::{
    full_generator, full_rate_derivative, reduced_generator, reduced_rate_derivative,
    reduced_system_derivative, steady_state, PolarizationPair, Populations, RelaxationRates,
};
