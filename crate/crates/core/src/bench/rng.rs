//! Seeded start points.
//!
//! The generator is xoshiro256++ seeded through SplitMix64, and a uniform
//! double is the top 53 bits of one output scaled by 2^-53. Both are fully
//! specified, so a seed yields the same start on every platform.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::domain::{Bounds, UnitPoint};

pub struct StartGenerator {
    rng: Xoshiro256PlusPlus,
}

impl StartGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    /// Uniform on `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn point_in(&mut self, bounds: &Bounds) -> Vec<f64> {
        bounds
            .lower()
            .iter()
            .zip(bounds.upper())
            .map(|(&a, &b)| (a + self.next_unit() * (b - a)).min(b))
            .collect()
    }
}

/// A uniformly distributed point of `bounds` determined by `seed`.
pub fn random_start(bounds: &Bounds, seed: u64) -> Vec<f64> {
    StartGenerator::new(seed).point_in(bounds)
}

/// The same start as [`random_start`], expressed on the unit cube.
pub fn random_unit_start(bounds: &Bounds, seed: u64) -> UnitPoint {
    let z = random_start(bounds, seed);
    bounds.to_unit(&z).expect("sample lies in its bounds")
}
