//! Readout signal, noise and signal-to-noise estimators.

mod bloch;
mod geometry;
mod lattice;
mod snr;

pub use bloch::{bloch_residual, bloch_steady_state, optimal_drive, RelaxationPair};
pub use geometry::{square_plate_blocks, BlockCounts, CoilCircuit, RegisterGeometry};
pub use lattice::{
    continuum_factor, continuum_signal, discrete_signal, planar_bulk_signal, rectangle_flux, spin_moment,
    SignalResolution,
};
pub use snr::{
    signal_eq5, snr_bulk, snr_bulk_estimate, snr_ensemble, snr_ensemble_folded, BulkSnr,
    EnsembleSnr, DEFAULT_BANDWIDTH_HZ,
};
