use alloc::vec::Vec;

use crate::pauli::Hamiltonian;
use crate::sim::{SpectrumCache, DEFAULT_DEGENERACY_TOL};
use crate::{Error, Result, DEFAULT_DENSE_CAP};

/// `H(k) = k h_initial + (1 - k) h_target`.
pub fn interpolate(h_initial: &Hamiltonian, h_target: &Hamiltonian, k: f64) -> Result<Hamiltonian> {
    h_initial.scaled(k).try_add(&h_target.scaled(1.0 - k))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapScan {
    pub min_gap: f64,
    /// Grid point of the minimum.
    pub k: f64,
    /// `1 / min_gap`.
    pub adiabatic_time: f64,
    /// `(k, gap)` per grid point; `None` where the spectrum is one group.
    pub samples: Vec<(f64, Option<f64>)>,
}

/// Smallest gap between the two lowest eigenvalue groups of `H(k)` on the
/// grid `k = i / (samples - 1)`.
pub fn min_gap(h_initial: &Hamiltonian, h_target: &Hamiltonian, samples: usize) -> Result<GapScan> {
    min_gap_capped(h_initial, h_target, samples, DEFAULT_DENSE_CAP)
}

pub fn min_gap_capped(h_initial: &Hamiltonian, h_target: &Hamiltonian, samples: usize, cap: usize) -> Result<GapScan> {
    if samples < 2 {
        return Err(Error::InvalidArgument(alloc::format!("{samples} grid points; at least two are needed")));
    }
    if h_initial.n_qubits() != h_target.n_qubits() {
        return Err(Error::LengthMismatch { expected: h_initial.n_qubits(), found: h_target.n_qubits() });
    }
    let mut out = Vec::with_capacity(samples);
    let mut best: Option<(f64, f64)> = None;
    for i in 0..samples {
        let k = i as f64 / (samples - 1) as f64;
        let h = interpolate(h_initial, h_target, k)?;
        let gap = SpectrumCache::with_options(&h, DEFAULT_DEGENERACY_TOL, cap)?.gap();
        if let Some(g) = gap {
            if best.is_none_or(|(m, _)| g < m) {
                best = Some((g, k));
            }
        }
        out.push((k, gap));
    }
    let (min_gap, k) = best.ok_or(Error::Gapless(0.0))?;
    Ok(GapScan { min_gap, k, adiabatic_time: 1.0 / min_gap, samples: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_z_to_x() {
        let z = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
        let x = Hamiltonian::from_labels(&[(1.0, "X")]).unwrap();
        let scan = min_gap(&z, &x, 101).unwrap();
        for (k, g) in &scan.samples {
            let expect = 2.0 * (k * k + (1.0 - k) * (1.0 - k)).sqrt();
            assert!((g.unwrap() - expect).abs() < 1e-12);
        }
        assert!((scan.min_gap - 2f64.sqrt()).abs() < 1e-12);
        assert!((scan.k - 0.5).abs() < 1e-12);
        assert!((scan.adiabatic_time - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn constant_path() {
        let h = Hamiltonian::from_labels(&[(1.0, "ZZ"), (0.3, "XI")]).unwrap();
        let scan = min_gap(&h, &h, 5).unwrap();
        let g0 = scan.samples[0].1.unwrap();
        assert!(scan.samples.iter().all(|(_, g)| (g.unwrap() - g0).abs() < 1e-12));
    }

    #[test]
    fn gapless_when_flat() {
        let h = Hamiltonian::zero(2);
        assert_eq!(min_gap(&h, &h, 3).unwrap_err(), Error::Gapless(0.0));
    }

    #[test]
    fn rejects_bad_grid_and_cap() {
        let h = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
        assert!(matches!(min_gap(&h, &h, 1).unwrap_err(), Error::InvalidArgument(_)));
        let big = Hamiltonian::from_labels(&[(1.0, "ZZZZ")]).unwrap();
        assert!(matches!(min_gap_capped(&big, &big, 2, 3).unwrap_err(), Error::CapExceeded { .. }));
    }
}
