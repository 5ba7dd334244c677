//! Seeded random initial data, reproducible across implementations.
//!
//! The generator is SplitMix64 (state advances by `0x9e3779b97f4a7c15`,
//! output mixed with the `splitmix64.c` finalizer). A uniform draw in
//! `[0, 1)` is `(next_u64() >> 11) * 2^-53`. Random fields take one draw per
//! interior site in lexicographic order.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::domain::BoxDomain;
use crate::field::Field;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: SplitMix64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.uniform() * (hi - lo + 1) as f64) as usize
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.int_in(0, items.len() - 1)]
    }
}

/// Interior values uniform in `[0, max_amplitude)`, zero boundary.
pub fn random_field<T: Scalar>(
    domain: &BoxDomain,
    rng: &mut SeededRng,
    max_amplitude: f64,
) -> Field<T> {
    Field::from_interior_fn(domain, |_| T::of(rng.uniform_in(0.0, max_amplitude)))
}
