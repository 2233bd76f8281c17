#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Largest accepted condition number of the beam system.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct BeamSolution {
    /// Signed beam durations `t_k`.
    pub durations: Vec<f64>,
    pub condition: f64,
    /// Indices with `t_k < 0` beyond rounding.
    pub negative: Vec<usize>,
    /// `||A t - tau e_a||`.
    pub residual: f64,
}

/// `f(r) = exp(-r^2 / 2 w^2)`.
pub fn gaussian_profile(width: f64) -> impl Fn(f64) -> f64 {
    move |r: f64| (-r * r / (2.0 * width * width)).exp()
}

fn distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

fn system(positions: &[[f64; 2]], profile: &dyn Fn(f64) -> f64, target: usize, nu0: f64) -> DMatrix<f64> {
    let n = positions.len();
    DMatrix::from_fn(n, n, |j, k| {
        let sign = if k == target { -1.0 } else { 1.0 };
        nu0 * profile(distance(positions[j], positions[k])) * sign
    })
}

/// Rotation angle `tau_j = nu0 sum_k t_k f(|r_j - r_k|) (-1)^{delta_ka}` on every atom.
pub fn beam_rotation_angles(
    positions: &[[f64; 2]],
    profile: &dyn Fn(f64) -> f64,
    target: usize,
    nu0: f64,
    durations: &[f64],
) -> Vec<f64> {
    let a = system(positions, profile, target, nu0);
    (a * DVector::from_column_slice(durations)).iter().copied().collect()
}

/// Beam durations rotating atom `target` by `tau` about `x` and leaving the
/// others untouched.
pub fn beam_compensation(
    positions: &[[f64; 2]],
    profile: &dyn Fn(f64) -> f64,
    target: usize,
    tau: f64,
    nu0: f64,
) -> Result<BeamSolution> {
    let n = positions.len();
    if target >= n {
        return Err(Error::QubitOutOfRange { index: target, n_qubits: n });
    }
    if !(tau.is_finite() && nu0.is_finite()) || nu0 == 0.0 {
        return Err(Error::InvalidArgument("tau and nu0 must be finite, nu0 nonzero".into()));
    }
    if (profile(0.0) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidProfile("beam profile must satisfy f(0) = 1".into()));
    }
    let a = system(positions, profile, target, nu0);
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let sv = a.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let mut rhs = DVector::zeros(n);
    rhs[target] = tau;
    let t = a.clone().lu().solve(&rhs).ok_or(Error::IllConditioned { condition })?;
    let residual = (&a * &t - &rhs).norm();
    let durations: Vec<f64> = t.iter().copied().collect();
    let scale = durations.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    let negative = durations.iter().enumerate().filter(|(_, v)| **v < -1e-12 * scale).map(|(i, _)| i).collect();
    Ok(BeamSolution { durations, condition, negative, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize) -> Vec<[f64; 2]> {
        (0..n).map(|i| [i as f64, 0.0]).collect()
    }

    #[test]
    fn negligible_overlap_is_diagonal() {
        let f = gaussian_profile(0.05);
        let s = beam_compensation(&row(4), &f, 2, 0.7, 2.0).unwrap();
        assert!((s.durations[2] + 0.35).abs() < 1e-12);
        for k in [0, 1, 3] {
            assert!(s.durations[k].abs() < 1e-12);
        }
        assert_eq!(s.negative, alloc::vec![2]);
    }

    #[test]
    fn three_atoms_gaussian_residual() {
        let f = gaussian_profile(1.5);
        let s = beam_compensation(&row(3), &f, 1, 0.3, 1.0).unwrap();
        assert!(s.residual <= 1e-10);
        let angles = beam_rotation_angles(&row(3), &f, 1, 1.0, &s.durations);
        assert!((angles[1] - 0.3).abs() < 1e-10);
        assert!(angles[0].abs() < 1e-10 && angles[2].abs() < 1e-10);
    }

    #[test]
    fn coincident_atoms_are_singular() {
        let f = gaussian_profile(1.0);
        let pos = alloc::vec![[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]];
        assert!(matches!(beam_compensation(&pos, &f, 2, 0.1, 1.0), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn profile_must_be_one_at_origin() {
        let f = |r: f64| 0.5 * (-r).exp();
        assert!(matches!(beam_compensation(&row(2), &f, 0, 0.1, 1.0), Err(Error::InvalidProfile(_))));
    }
}
