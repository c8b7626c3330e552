//! Seeded randomness. A single master seed splits into independent streams so
//! any run is reproducible from one 64-bit value.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::field;

/// Stream tags for deriving sub-seeds from a master seed.
pub mod stream {
    pub const REALIZATION: u64 = 1;
    pub const STRESS: u64 = 2;
    pub const ORDERING_SAMPLE: u64 = 3;
    pub const CERTIFICATE: u64 = 4;
    pub const PARTITION: u64 = 5;
}

/// Derives a sub-seed from (master, stream, index) with a splitmix-style mix.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic RNG. The ChaCha stream is stable across platforms and
/// releases, so seeded results are reproducible forever.
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn from_seed(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in [0, bound); bound must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }

    /// Uniform field element in [0, P).
    pub fn field_element(&mut self) -> u64 {
        loop {
            let x = self.next_u64() >> 3; // 61 bits, in [0, P]
            if x < field::P {
                return x;
            }
        }
    }

    /// Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }

    /// Uniform k-subset of `items`, returned sorted.
    pub fn choose_subset(&mut self, items: &[usize], k: usize) -> Vec<usize> {
        debug_assert!(k <= items.len());
        let mut pool = items.to_vec();
        for i in 0..k {
            let j = i + self.below(pool.len() - i);
            pool.swap(i, j);
        }
        let mut out = pool[..k].to_vec();
        out.sort_unstable();
        out
    }
}
