//! Gateless cellular automaton on an antiferromagnetic chain of nuclear
//! spins addressed by neighbour-selective π pulses.
//!
//! Sites alternate A, B, A, … starting with A. Magnetic quantum numbers are
//! stored doubled: A-ground +1, A-excited −1, B-ground −1, B-excited +1.

mod chain;
mod encode;
mod port;
mod pulse;

pub use chain::{is_antiferromagnetic_2d, validate_control_unit, ChainState, Marker, Site, SpinState, Sublattice};
pub use encode::{code_distance, encode_logical, logical_pattern, logical_value, window_patterns, Encoding};
pub use port::{port_io, PortOp, PortOutcome};
pub use pulse::{
    apply_pulse, format_program, parse_program, resonance_frequency, run_program, table_pulses, ChainCouplings,
    PulseSpec, PulseTarget, DEFAULT_LINEWIDTH,
};
