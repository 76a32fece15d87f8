use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Dealer randomness. Deterministic when built from a seed.
///
/// A source belongs to one dealing at a time; use [`RandomSource::fork`] to
/// hand independent streams to sub-dealings.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn from_seed(seed: [u8; 32]) -> Self {
        RandomSource {
            rng: ChaCha20Rng::from_seed(seed),
        }
    }

    /// Seed expanded from a `u64`, for tests and the CLI `--seed` flag.
    pub fn from_u64(seed: u64) -> Self {
        RandomSource {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn from_entropy() -> Self {
        let seed: [u8; 32] = rand::rng().random();
        Self::from_seed(seed)
    }

    /// Uniform value in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.random_range(0..bound)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// A new source seeded from this one's stream.
    pub fn fork(&mut self) -> RandomSource {
        let mut seed = [0u8; 32];
        self.rng.fill_bytes(&mut seed);
        Self::from_seed(seed)
    }
}
