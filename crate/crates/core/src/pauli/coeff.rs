use alloc::vec::Vec;

use super::{Hamiltonian, Pauli, PauliString};
use crate::{Error, Result};

/// `H = sum_{i,j in x,y,z} M_ij sigma_i (x) sigma_j`; row index acts on the
/// first qubit.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CoeffMatrix(pub [[f64; 3]; 3]);

impl CoeffMatrix {
    pub fn zero() -> Self {
        CoeffMatrix([[0.0; 3]; 3])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, v) in d.iter().enumerate() {
            m[i][i] = *v;
        }
        CoeffMatrix(m)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[j][i];
            }
        }
        CoeffMatrix(m)
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.0[i][j].abs() <= tol))
    }

    pub fn diag(&self) -> [f64; 3] {
        [self.0[0][0], self.0[1][1], self.0[2][2]]
    }

    pub fn scaled(&self, f: f64) -> Self {
        let mut m = self.0;
        m.iter_mut().flatten().for_each(|v| *v *= f);
        CoeffMatrix(m)
    }

    pub fn approx_eq(&self, other: &CoeffMatrix, tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| (self.0[i][j] - other.0[i][j]).abs() <= tol))
    }

    pub(crate) fn to_na(self) -> nalgebra::Matrix3<f64> {
        nalgebra::Matrix3::from_fn(|i, j| self.0[i][j])
    }

    /// Eigenvalues (ascending) of the symmetric part.
    pub fn symmetric_eigenvalues(&self) -> [f64; 3] {
        let m = self.to_na();
        let sym = (m + m.transpose()) * 0.5;
        let e = sym.symmetric_eigenvalues();
        let mut v = [e[0], e[1], e[2]];
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        v
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> [f64; 3] {
        let s = self.to_na().singular_values();
        let mut v = [s[0], s[1], s[2]];
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        v
    }

    /// Coefficient matrix of the `(a, b)` two-body part of an `N`-qubit Hamiltonian.
    pub fn of_pair(h: &Hamiltonian, a: usize, b: usize) -> CoeffMatrix {
        let mut m = [[0.0; 3]; 3];
        for t in h.terms() {
            if t.weight() != 2 {
                continue;
            }
            let ops = t.ops();
            if let (Some(i), Some(j)) = (ops[a].axis(), ops[b].axis()) {
                m[i][j] += t.coeff();
            }
        }
        CoeffMatrix(m)
    }

    /// Two-body Pauli terms on qubits `(a, b)` of an `n`-qubit register.
    pub fn pair_terms(&self, n_qubits: usize, a: usize, b: usize) -> Vec<PauliString> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if self.0[i][j] != 0.0 {
                    out.push(PauliString::pair(n_qubits, a, Pauli::from_axis(i), b, Pauli::from_axis(j), self.0[i][j]));
                }
            }
        }
        out
    }
}

/// Splits a two-qubit Hamiltonian into its interaction matrix and the
/// remaining local (identity-containing) terms.
pub fn coeff_matrix(h: &Hamiltonian) -> Result<(CoeffMatrix, Hamiltonian)> {
    if h.n_qubits() != 2 {
        return Err(Error::NotTwoQubit(h.n_qubits()));
    }
    let mut m = [[0.0; 3]; 3];
    let mut local = Vec::new();
    for t in h.terms() {
        let ops = t.ops();
        match (ops[0].axis(), ops[1].axis()) {
            (Some(i), Some(j)) => m[i][j] = t.coeff(),
            _ => local.push(t.clone()),
        }
    }
    Ok((CoeffMatrix(m), Hamiltonian::from_terms(2, local)?))
}

pub fn from_coeff_matrix(m: &CoeffMatrix) -> Hamiltonian {
    Hamiltonian::from_terms(2, m.pair_terms(2, 0, 1)).expect("two-qubit terms")
}
