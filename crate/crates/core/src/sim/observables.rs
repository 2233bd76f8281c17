use alloc::vec::Vec;

use super::StateVector;
use crate::dense;
use crate::pauli::Pauli;
use crate::{Error, Result, C64};

/// Single-site `<sigma^(a)>` or two-point `<sigma^(a) sigma^(b)>` request.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    Single { site: usize, op: Pauli },
    Pair { a: usize, pa: Pauli, b: usize, pb: Pauli },
}

impl Observable {
    fn ops(&self, n_qubits: usize) -> Result<Vec<Pauli>> {
        let mut ops = alloc::vec![Pauli::I; n_qubits];
        let mut set = |site: usize, p: Pauli| {
            if site >= n_qubits {
                return Err(Error::QubitOutOfRange { index: site, n_qubits });
            }
            ops[site] = p;
            Ok(())
        };
        match *self {
            Observable::Single { site, op } => set(site, op)?,
            Observable::Pair { a, pa, b, pb } => {
                if a == b {
                    return Err(Error::SameQubit(a));
                }
                set(a, pa)?;
                set(b, pb)?;
            }
        }
        Ok(ops)
    }
}

/// `<psi| P |psi>` for a Pauli string.
pub fn expectation(state: &StateVector, ops: &[Pauli]) -> Result<f64> {
    if ops.len() != state.n_qubits() {
        return Err(Error::LengthMismatch { expected: state.n_qubits(), found: ops.len() });
    }
    let mut out = alloc::vec![C64::new(0.0, 0.0); state.dim()];
    dense::apply_pauli_add(ops, C64::new(1.0, 0.0), state.amplitudes(), &mut out);
    let v: C64 = state.amplitudes().iter().zip(&out).map(|(a, b)| a.conj() * b).sum();
    Ok(v.re)
}

pub fn observables(state: &StateVector, requests: &[Observable]) -> Result<Vec<f64>> {
    requests.iter().map(|r| expectation(state, &r.ops(state.n_qubits())?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::NoiseSource;

    #[test]
    fn z_on_zero() {
        let s = StateVector::zero(1).unwrap();
        assert_eq!(observables(&s, &[Observable::Single { site: 0, op: Pauli::Z }]).unwrap(), alloc::vec![1.0]);
    }

    #[test]
    fn anti_correlated_pair() {
        let s = StateVector::normalized(2, alloc::vec![
            C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)
        ])
        .unwrap();
        let v = observables(&s, &[Observable::Pair { a: 0, pa: Pauli::Z, b: 1, pb: Pauli::Z }]).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn xx_matches_dense() {
        let mut src = NoiseSource::new(3);
        let s = StateVector::normalized(3, (0..8).map(|_| C64::new(src.delta(1.0), src.delta(1.0))).collect()).unwrap();
        let ops = [Pauli::X, Pauli::I, Pauli::X];
        let m = dense::pauli_matrix(&ops);
        let v = dense::CVector::from_column_slice(s.amplitudes());
        let oracle = v.dotc(&(&m * &v)).re;
        let got = observables(&s, &[Observable::Pair { a: 0, pa: Pauli::X, b: 2, pb: Pauli::X }]).unwrap();
        assert!((got[0] - oracle).abs() < 1e-12);
    }

    #[test]
    fn invalid_indices() {
        let s = StateVector::zero(2).unwrap();
        assert!(observables(&s, &[Observable::Single { site: 2, op: Pauli::X }]).is_err());
        assert_eq!(
            observables(&s, &[Observable::Pair { a: 1, pa: Pauli::X, b: 1, pb: Pauli::Z }]),
            Err(Error::SameQubit(1))
        );
    }
}
