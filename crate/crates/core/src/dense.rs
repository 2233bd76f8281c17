//! Dense `2^N x 2^N` matrices: construction from Pauli sums, Hermitian
//! eigendecomposition, exponentials and norms. Qubit `q` is bit `q` of the
//! basis index.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::pauli::{Hamiltonian, Pauli};
use crate::{Error, Result, C64};

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub fn check_cap(n_qubits: usize, cap: usize) -> Result<()> {
    if n_qubits > cap {
        Err(Error::CapExceeded { n_qubits, cap })
    } else {
        Ok(())
    }
}

/// Applies `coeff * P` to `input`, accumulating into `out`.
pub fn apply_pauli_add(ops: &[Pauli], coeff: C64, input: &[C64], out: &mut [C64]) {
    let (x, z) = crate::pauli::masks_of(ops);
    let ny = ops.iter().filter(|p| **p == Pauli::Y).count() % 4;
    let base = coeff * crate::pauli::Phase::I.to_complex().powi(ny as i32);
    for (k, amp) in input.iter().enumerate() {
        let sign = if ((k as u64) & z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        out[k ^ x as usize] += base * *amp * sign;
    }
}

/// `H psi` without building the dense matrix.
pub fn apply_hamiltonian(h: &Hamiltonian, psi: &[C64]) -> Vec<C64> {
    let mut out = alloc::vec![C64::new(0.0, 0.0); psi.len()];
    for t in h.terms() {
        apply_pauli_add(t.ops(), C64::new(t.coeff(), 0.0), psi, &mut out);
    }
    out
}

pub fn pauli_matrix(ops: &[Pauli]) -> CMatrix {
    let dim = 1usize << ops.len();
    let mut m = CMatrix::zeros(dim, dim);
    let mut col = alloc::vec![C64::new(0.0, 0.0); dim];
    let mut out = alloc::vec![C64::new(0.0, 0.0); dim];
    for k in 0..dim {
        col.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
        out.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
        col[k] = C64::new(1.0, 0.0);
        apply_pauli_add(ops, C64::new(1.0, 0.0), &col, &mut out);
        for (r, v) in out.iter().enumerate() {
            m[(r, k)] = *v;
        }
    }
    m
}

pub fn hamiltonian_matrix(h: &Hamiltonian) -> CMatrix {
    let dim = 1usize << h.n_qubits();
    let mut m = CMatrix::zeros(dim, dim);
    for t in h.terms() {
        let (x, z) = t.masks();
        let ny = t.y_count() % 4;
        let base = C64::new(t.coeff(), 0.0) * C64::new(0.0, 1.0).powi(ny as i32);
        for k in 0..dim {
            let sign = if ((k as u64) & z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            m[(k ^ x as usize, k)] += base * sign;
        }
    }
    m
}

/// Real symmetric matrix of `h`, when every term has an even number of `Y`.
pub fn hamiltonian_matrix_real(h: &Hamiltonian) -> Option<DMatrix<f64>> {
    if !h.is_real() {
        return None;
    }
    let dim = 1usize << h.n_qubits();
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    for t in h.terms() {
        let (x, z) = t.masks();
        // i^{#Y} is +-1 for an even count.
        let base = if (t.y_count() / 2) % 2 == 0 { t.coeff() } else { -t.coeff() };
        for k in 0..dim {
            let sign = if ((k as u64) & z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            m[(k ^ x as usize, k)] += base * sign;
        }
    }
    Some(m)
}

/// Eigenvalues ascending with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn eigh(h: &Hamiltonian) -> Eigen {
    if let Some(real) = hamiltonian_matrix_real(h) {
        let e = real.symmetric_eigen();
        let vectors = e.eigenvectors.map(|v| C64::new(v, 0.0));
        sorted(e.eigenvalues.iter().copied().collect(), vectors)
    } else {
        eigh_matrix(hamiltonian_matrix(h))
    }
}

pub fn eigh_matrix(m: CMatrix) -> Eigen {
    let e = m.symmetric_eigen();
    sorted(e.eigenvalues.iter().copied().collect(), e.eigenvectors)
}

fn sorted(values: Vec<f64>, vectors: CMatrix) -> Eigen {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalues"));
    let vals = order.iter().map(|&i| values[i]).collect();
    let vecs = CMatrix::from_fn(vectors.nrows(), order.len(), |r, c| vectors[(r, order[c])]);
    Eigen { values: vals, vectors: vecs }
}

impl Eigen {
    /// `exp(-i H t)`.
    pub fn evolution(&self, t: f64) -> CMatrix {
        let phases = DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|e| C64::from_polar(1.0, -e * t)),
        );
        let scaled = CMatrix::from_fn(self.vectors.nrows(), self.vectors.ncols(), |r, c| {
            self.vectors[(r, c)] * phases[c]
        });
        scaled * self.vectors.adjoint()
    }

    /// `exp(-i H t) psi` without forming the full propagator.
    pub fn evolve_vector(&self, t: f64, psi: &[C64]) -> Vec<C64> {
        let v = CVector::from_column_slice(psi);
        let mut coeffs = self.vectors.ad_mul(&v);
        for (c, e) in coeffs.iter_mut().zip(&self.values) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        (&self.vectors * coeffs).iter().copied().collect()
    }
}

/// `exp(-i H t)` of a Hamiltonian.
pub fn expm_hermitian(h: &Hamiltonian, t: f64) -> CMatrix {
    eigh(h).evolution(t)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    let g = m.ad_mul(m);
    let e = g.symmetric_eigen();
    e.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(*v)).max(0.0).sqrt()
}

/// `||a - b||_2`.
pub fn operator_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    spectral_norm(&(a - b))
}

pub fn max_entry_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().fold(0.0, |acc, v| acc.max(v.norm()))
}
