use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::{Error, Result};

/// Recorded in execution logs.
pub const RNG_ALGORITHM: &str = "chacha20 (rand_chacha, seed_from_u64); u = (next_u64 >> 11) * 2^-53; delta = eta * (2u - 1)";

/// Uniform fractional timing jitter: each intended angle `theta` becomes
/// `theta (1 + delta)` with `delta` uniform on `[-eta, eta]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorModel {
    pub eta_local: f64,
    pub eta_int: f64,
    pub seed: u64,
    /// Apply parasitic couplings of concurrent pushes.
    pub crosstalk: bool,
}

impl ErrorModel {
    pub fn new(eta_local: f64, eta_int: f64, seed: u64) -> Result<Self> {
        for eta in [eta_local, eta_int] {
            if !(0.0..1.0).contains(&eta) {
                return Err(Error::NoiseOutOfRange(eta));
            }
        }
        Ok(ErrorModel { eta_local, eta_int, seed, crosstalk: false })
    }

    pub fn with_crosstalk(mut self, on: bool) -> Self {
        self.crosstalk = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.eta_local, self.eta_int, self.seed).map(|_| ())
    }

    pub fn source(&self) -> NoiseSource {
        NoiseSource::new(self.seed)
    }
}

/// Sequential stream of jitter draws.
#[derive(Clone, Debug)]
pub struct NoiseSource {
    rng: ChaCha20Rng,
}

impl NoiseSource {
    pub fn new(seed: u64) -> Self {
        NoiseSource { rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-eta, eta)`.
    pub fn delta(&mut self, eta: f64) -> f64 {
        eta * (2.0 * self.uniform() - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_bounded_and_reproducible() {
        let mut a = NoiseSource::new(7);
        let mut b = NoiseSource::new(7);
        let mut mean = 0.0;
        for _ in 0..10_000 {
            let d = a.delta(0.02);
            assert_eq!(d, b.delta(0.02));
            assert!((-0.02..0.02).contains(&d));
            mean += d;
        }
        assert!((mean / 10_000.0).abs() < 0.001);
        assert_ne!(NoiseSource::new(8).uniform(), NoiseSource::new(7).uniform());
    }

    #[test]
    fn eta_range() {
        assert!(ErrorModel::new(0.0, 0.99, 1).is_ok());
        assert_eq!(ErrorModel::new(1.0, 0.0, 1), Err(Error::NoiseOutOfRange(1.0)));
        assert_eq!(ErrorModel::new(0.0, -0.1, 1), Err(Error::NoiseOutOfRange(-0.1)));
    }
}
