#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use crate::pauli::{LocalLayer, SingleQubitUnitary};
use crate::{Error, Result};

fn check_direction(direction: [f64; 3]) -> Result<()> {
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitDirection(norm));
    }
    Ok(())
}

/// `exp(-i B (n . sigma) dt)` on every qubit.
pub fn magnetic_field_layer(b: f64, direction: [f64; 3], dt: f64) -> Result<LocalLayer> {
    check_direction(direction)?;
    Ok(LocalLayer::Homogeneous(SingleQubitUnitary::rotation(direction, b * dt)?))
}

/// Site-dependent field `B_a` along a common direction.
pub fn magnetic_field_layer_per_site(b: &[f64], direction: [f64; 3], dt: f64) -> Result<LocalLayer> {
    check_direction(direction)?;
    let us = b
        .iter()
        .map(|ba| SingleQubitUnitary::rotation(direction, ba * dt))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalLayer::Inhomogeneous(us).normalized())
}
