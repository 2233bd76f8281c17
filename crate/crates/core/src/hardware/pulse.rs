#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use super::TrapArrayModel;
use crate::{Error, Result};

/// Sampled push profile `f(t)` with values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseProfile {
    samples: Vec<f64>,
    dt: f64,
}

impl PulseProfile {
    pub fn new(samples: Vec<f64>, dt: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidProfile("need at least two samples".into()));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidProfile(alloc::format!("sample spacing {dt} must be positive")));
        }
        if let Some(v) = samples.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidProfile(alloc::format!("sample {v} outside [0, 1]")));
        }
        Ok(PulseProfile { samples, dt })
    }

    /// `f` sampled on `n` points over `[0, duration]`.
    pub fn from_fn(n: usize, duration: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidProfile("need at least two samples".into()));
        }
        let dt = duration / (n - 1) as f64;
        Self::new((0..n).map(|i| f(i as f64 * dt)).collect(), dt)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn duration(&self) -> f64 {
        self.dt * (self.samples.len() - 1) as f64
    }

    /// Starts and ends at rest (`f = 0`).
    pub fn returns_to_rest(&self) -> bool {
        self.samples[0] == 0.0 && self.samples[self.samples.len() - 1] == 0.0
    }
}

/// `theta = -kappa dist^{-3} integral fA fB dt`, trapezoidal rule.
pub fn theta_from_pulse(fa: &PulseProfile, fb: &PulseProfile, model: &TrapArrayModel, dist: f64) -> Result<f64> {
    if fa.samples.len() != fb.samples.len() || fa.dt != fb.dt {
        return Err(Error::InvalidProfile("profiles differ in length or spacing".into()));
    }
    if !(dist > 0.0 && dist.is_finite()) {
        return Err(Error::InvalidGeometry(alloc::format!("distance {dist}")));
    }
    let prod: Vec<f64> = fa.samples.iter().zip(&fb.samples).map(|(a, b)| a * b).collect();
    let interior: f64 = prod[1..prod.len() - 1].iter().sum();
    let integral = fa.dt * (0.5 * (prod[0] + prod[prod.len() - 1]) + interior);
    Ok(-model.kappa * dist.powi(-3) * integral)
}
