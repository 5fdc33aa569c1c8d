//! Seeded random streams.
//!
//! Every generator in this crate draws from a xoshiro256++ stream whose
//! 256-bit state is expanded from the 64-bit [`Seed`] with SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Uniform reals take the top 53 bits
//! of each output word; normal deviates come from the Box–Muller transform
//! applied to consecutive uniforms. Output is therefore a pure function of
//! the seed, identical on every platform this crate builds for.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    /// Deterministically derives the seed of the `index`-th independent
    /// repetition.
    pub fn derive(self, index: u64) -> Seed {
        // SplitMix64 finalizer over seed + golden-ratio offset.
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Seed(z ^ (z >> 31))
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

pub struct Stream {
    inner: Xoshiro256PlusPlus,
    spare_normal: Option<f64>,
}

impl Stream {
    pub fn new(seed: Seed) -> Self {
        Stream {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed.0),
            spare_normal: None,
        }
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal deviate (Box–Muller, both outputs used).
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // 1 - u lies in (0, 1], so the logarithm is finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (sin, cos) = (TAU * u2).sin_cos();
        self.spare_normal = Some(radius * sin);
        radius * cos
    }
}
