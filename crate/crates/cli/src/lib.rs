//! Scenario runner and reproduction suite for the `ensemble-nmr` kernels.
//!
//! - [`config`]: unit-suffixed configuration files.
//! - [`scenarios`]: the static scenario registry.
//! - [`runner`]: config execution, per-scenario output directories and the
//!   run manifest.
//! - [`verify`]: the acceptance criteria.

pub mod config;
pub mod error;
pub mod output;
pub mod runner;
pub mod scenarios;
pub mod verify;

pub use error::{CliError, CliResult};

/// Manifest seed used when neither `--seed` nor the config sets one.
pub const DEFAULT_SEED: u64 = 42;

/// Seed of a named sub-stream: 64-bit FNV-1a over the little-endian bytes of
/// `seed` followed by the UTF-8 bytes of `label`.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    seed.to_le_bytes()
        .iter()
        .chain(label.as_bytes())
        .fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}
