//! Deterministic pseudo-random streams for solver start vectors.
//!
//! A fixed in-crate generator (splitmix64) keeps seeded runs bit-reproducible
//! across platforms and dependency upgrades, which the run manifests rely on.

use crate::scalar::{Scalar, C};

/// Splitmix64 stream; passes through all 2^64 states, period 2^64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of entropy.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric<S: Scalar>(&mut self) -> S {
        S::of(2.0 * self.next_f64() - 1.0)
    }

    /// Complex vector with i.i.d. uniform [-1,1) parts, not normalized.
    pub fn complex_vector<S: Scalar>(&mut self, len: usize) -> Vec<C<S>> {
        (0..len)
            .map(|_| C::new(self.next_symmetric(), self.next_symmetric()))
            .collect()
    }
}
