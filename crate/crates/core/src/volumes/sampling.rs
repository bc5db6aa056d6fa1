use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ConicError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub tolerance_sigmas: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { n_samples: 100_000, seed: 0, workers: 1, tolerance_sigmas: 4.0 }
    }
}

impl SampleConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        SampleConfig { n_samples, seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(ConicError::input("n_samples must be at least 1"));
        }
        if self.workers == 0 {
            return Err(ConicError::input("workers must be at least 1"));
        }
        if !(self.tolerance_sigmas > 0.0) {
            return Err(ConicError::input("tolerance_sigmas must be positive"));
        }
        Ok(())
    }

    /// Same budget with a seed derived from `(self.seed, tag, index)`.
    pub fn derive(&self, tag: &str, index: u64) -> SampleConfig {
        SampleConfig { seed: derive_seed(self.seed, tag, index), ..*self }
    }

    pub fn with_samples(&self, n_samples: u64) -> SampleConfig {
        SampleConfig { n_samples, ..*self }
    }

    /// Number of samples assigned to each worker.
    pub fn split(&self) -> Vec<u64> {
        let w = self.workers as u64;
        (0..w)
            .map(|i| self.n_samples / w + u64::from(i < self.n_samples % w))
            .collect()
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic child seed for a named sub-computation.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    let mut h = splitmix(seed);
    for b in tag.bytes() {
        h = splitmix(h ^ u64::from(b));
    }
    splitmix(h ^ splitmix(index))
}

/// Substream `stream` of the generator keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

/// Run `work` once per worker with that worker's substream and sample count;
/// results come back in worker order regardless of scheduling.
pub fn for_each_worker<T, F>(cfg: &SampleConfig, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    cfg.split()
        .into_par_iter()
        .enumerate()
        .map(|(w, n)| work(&mut stream_rng(cfg.seed, w as u64), n))
        .collect()
}
