//! Pauli strings, Hamiltonians, single-qubit unitaries and the two-qubit
//! coefficient-matrix view.

mod coeff;
mod hamiltonian;
mod string;
mod unitary;

pub use coeff::{coeff_matrix, from_coeff_matrix, CoeffMatrix};
pub use hamiltonian::{commutator, conjugate, Commutator, Hamiltonian, Ladder, PRUNE_TOL};
pub(crate) use string::masks_of;
pub use string::{pauli_multiply, Pauli, PauliString, Phase};
pub use unitary::{LocalLayer, RotationParams, SingleQubitUnitary, UNITARITY_TOL};
