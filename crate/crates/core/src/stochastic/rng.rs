//! Per-path random streams.
//!
//! Path `i` of a run with seed `s` draws from the ChaCha8 keystream keyed by
//! `s` on stream `i`. The keystream is a function of (key, stream, block
//! counter) only, so a path sees the same numbers no matter which worker runs
//! it or in what order.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct PathRng {
    inner: ChaCha8Rng,
}

/// The stream for path `path_index` under `seed`.
pub fn path_rng(seed: u64, path_index: u64) -> PathRng {
    let mut inner = ChaCha8Rng::seed_from_u64(seed);
    inner.set_stream(path_index);
    PathRng { inner }
}

impl PathRng {
    #[inline]
    pub fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniform on `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}
