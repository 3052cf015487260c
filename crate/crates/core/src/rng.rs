//! The crate's single random number source.
//!
//! `SimRng` is ChaCha8 seeded through `SeedableRng::seed_from_u64`, with
//! uniform doubles built from the top 53 bits of each `u64` draw. Both the
//! ChaCha8 stream and the seed expansion are value-stable across releases of
//! `rand_chacha`/`rand_core`, which keeps seeded histograms reproducible.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct SimRng {
    inner: ChaCha8Rng,
}

impl SimRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent generator on ChaCha stream `stream` of the same key.
    pub fn split(&self, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::from_seed(self.inner.get_seed());
        inner.set_stream(stream);
        Self { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform double in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_stream_is_frozen() {
        let mut rng = SimRng::new(42);
        let first: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(first, FROZEN_SEED_42);
    }

    #[test]
    fn doubles_in_unit_interval() {
        let mut rng = SimRng::new(7);
        for _ in 0..10_000 {
            let u = rng.next_f64();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn split_streams_differ_and_repeat() {
        let base = SimRng::new(1);
        let mut a = base.split(1);
        let mut b = base.split(2);
        let mut a2 = base.split(1);
        let xa = a.next_u64();
        assert_ne!(xa, b.next_u64());
        assert_eq!(xa, a2.next_u64());
    }

    const FROZEN_SEED_42: [u64; 3] = [
        12578764544318200737,
        17529487244874322312,
        7886285670807131020,
    ];
}
