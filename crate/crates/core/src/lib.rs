//! Physics kernels for ensemble solid-state NMR quantum registers built from
//! donor nuclear spins in silicon.
//!
//! Modules map onto the physical sub-problems:
//!
//! - [`model`]: donor species, Breit-Rabi levels, transitions, pseudo-pure
//!   polarization, RF gain.
//! - [`readout`]: coil model, Bloch steady state, bulk and planar-ensemble
//!   signal-to-noise, discrete vs. continuum readout signal.
//! - [`dnp`]: four-level rate equations for solid-effect polarization and the
//!   microwave power budget.
//! - [`decoherence`]: Gaussian dephasing decrement and the hyperfine and
//!   impurity channels.
//! - [`entangled`]: two-qubit dephasing under correlated phase noise.
//! - [`automaton`]: the antiferromagnetic spin-chain cellular automaton.
//!
//! Everything is SI with angular frequencies in rad/s unless a name says
//! otherwise.

pub mod automaton;
pub mod constants;
pub mod decoherence;
pub mod dnp;
pub mod entangled;
pub mod error;
pub mod exec;
pub mod model;
pub mod quad;
pub mod readout;
pub mod tolerances;

pub use error::{Error, Result};
pub use exec::ExecPolicy;
