//! Two-qubit dephasing under correlated Gaussian phase noise.
//!
//! Basis order is (↑↑, ↑↓, ↓↑, ↓↓). A phase triple (φ₁, φ₂, φ_I) acts as
//! U = diag(exp(i(φ₁s₁/2 + φ₂s₂/2 + φ_I s₁s₂))) with s = ±1, and states
//! evolve as U†ρU.

mod density;
mod phases;

pub use density::{phase_unitary, TwoQubitDensity, BASIS};
pub use phases::{
    averaged_bell, averaged_density, averaged_epr, gamma_bell, gamma_epr, monte_carlo_average,
    sample_correlated_phases, CorrelatedPhaseModel, MonteCarloDensity, PhaseCovariance, PhaseSample,
    PhaseVariance,
};
