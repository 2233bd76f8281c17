use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{dense, Error, Result, C64, STATEVECTOR_CAP};

/// Accepted deviation of `||psi||` from one.
pub const NORM_TOL: f64 = 1e-9;

/// `2^N` amplitudes; qubit `q` is bit `q` of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0...0>`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        dense::check_cap(n_qubits, STATEVECTOR_CAP)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(alloc::format!("basis index {index} out of range")));
        }
        let mut amps = alloc::vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Checks length and normalization.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        dense::check_cap(n_qubits, STATEVECTOR_CAP)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::LengthMismatch { expected: 1 << n_qubits, found: amps.len() });
        }
        if amps.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        let s = StateVector { n_qubits, amps };
        s.check_norm(NORM_TOL)?;
        Ok(s)
    }

    /// Rescales to unit norm.
    pub fn normalized(n_qubits: usize, mut amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::NormDrift(norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(n_qubits, amps)
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<C64>) -> Self {
        StateVector { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn check_norm(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            Err(Error::NormDrift(norm))
        } else {
            Ok(())
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::LengthMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }
}

/// `|<psi|phi>|^2`.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm_sqr().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut x = seed;
        let mut next = || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((x >> 11) as f64) / (1u64 << 53) as f64 - 0.5
        };
        let amps = (0..1 << n).map(|_| C64::new(next(), next())).collect();
        StateVector::normalized(n, amps).unwrap()
    }

    #[test]
    fn fidelity_basics() {
        let psi = random_state(3, 1);
        assert!((fidelity(&psi, &psi).unwrap() - 1.0).abs() < 1e-14);
        let a = StateVector::basis(2, 1).unwrap();
        let b = StateVector::basis(2, 2).unwrap();
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        let phase = C64::from_polar(1.0, 0.7);
        let rotated = StateVector::from_amplitudes(3, psi.amplitudes().iter().map(|a| a * phase).collect()).unwrap();
        assert!((fidelity(&psi, &rotated).unwrap() - 1.0).abs() < 1e-14);
        let phi = random_state(3, 2);
        assert_eq!(fidelity(&psi, &phi).unwrap(), fidelity(&phi, &psi).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            StateVector::from_amplitudes(1, alloc::vec![C64::new(1.0, 0.0)]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            StateVector::from_amplitudes(1, alloc::vec![C64::new(1.0, 0.0); 2]),
            Err(Error::NormDrift(_))
        ));
        assert!(matches!(StateVector::zero(STATEVECTOR_CAP + 1), Err(Error::CapExceeded { .. })));
        let a = StateVector::zero(1).unwrap();
        let b = StateVector::zero(2).unwrap();
        assert!(fidelity(&a, &b).is_err());
    }
}
