//! Average-Hamiltonian compilation and statevector execution for
//! quantum-optical spin simulators.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! * [`pauli`]: exact algebra of Pauli strings and real-coefficient Hamiltonians.
//! * [`compiler`]: effective Hamiltonians of control sequences, feasibility and
//!   cost formulas, the protocol library and Trotter scheduling.
//! * [`hardware`]: optical-lattice (shift gates, homogeneous control) and
//!   micro-trap (pairwise push gates, `1/d^3` crosstalk) platform models.
//! * [`sim`]: dense statevector execution with timing jitter, plus the exact
//!   eigendecomposition oracle.
//! * [`experiments`]: named spin models, minimum-gap analysis and adiabatic
//!   ground-state preparation runs.
//!
//! Units: `hbar = 1`, times and energies dimensionless. Qubit 0 is the least
//! significant bit of a basis-state index.
#![no_std]

extern crate alloc;

pub mod compiler;
pub mod dense;
mod error;
pub mod experiments;
pub mod hardware;
pub mod pauli;
pub mod sim;

pub use error::{Error, Result};

/// Complex double used for amplitudes and matrix entries.
pub type C64 = num_complex::Complex64;

/// Largest register for which dense `2^N x 2^N` matrices are built.
pub const DEFAULT_DENSE_CAP: usize = 12;

/// Largest register accepted by statevector-only operations.
pub const STATEVECTOR_CAP: usize = 24;
