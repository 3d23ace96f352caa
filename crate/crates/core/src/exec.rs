//! Data-parallel execution with a deterministic reduction order.
//!
//! Work is split into fixed-size chunks whose boundaries depend only on the
//! problem size, never on the number of workers. Per-chunk results are
//! collected in chunk order and folded sequentially, so parallel and
//! sequential runs produce bit-identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// How chunked kernels are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecPolicy {
    Sequential,
    /// Rayon work stealing when the `parallel` feature is enabled, otherwise
    /// identical to `Sequential`.
    #[default]
    Parallel,
}

/// Samples per Monte-Carlo chunk. Part of the reproducibility contract:
/// changing it changes every seeded stream.
pub const MC_CHUNK: usize = 8192;

/// Half-open index ranges of `count` items split into chunks of `chunk`.
pub fn chunk_ranges(count: usize, chunk: usize) -> Vec<std::ops::Range<usize>> {
    assert!(chunk > 0);
    (0..count.div_ceil(chunk))
        .map(|k| k * chunk..((k + 1) * chunk).min(count))
        .collect()
}

/// Generator for chunk `index` of a run seeded with `seed`: one ChaCha8 key
/// per seed, one stream per chunk.
pub fn chunk_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Evaluates `f(0..n)` and returns the results in index order.
pub fn map_indexed<T, F>(policy: ExecPolicy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match policy {
        ExecPolicy::Sequential => (0..n).map(f).collect(),
        ExecPolicy::Parallel => par_map(n, f),
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
