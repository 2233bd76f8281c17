use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::compiler::{Axis, GateId, RawGate, ZzTerm};
use crate::pauli::{Hamiltonian, Pauli, PauliString};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeShape {
    Chain(usize),
    Grid { rows: usize, cols: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Optical lattice of two species whose relative displacement by `j` sites
/// switches on `K_j = sum_a Z_a Z_{a+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeModel {
    pub shape: LatticeShape,
    pub boundary: Boundary,
    pub available_j: Vec<usize>,
    pub gamma: f64,
    /// Displacements along the `(1, 1)` diagonal are available.
    pub diagonal_shifts: bool,
}

impl LatticeModel {
    pub fn chain(n: usize, boundary: Boundary, available_j: &[usize]) -> Result<Self> {
        Self::new(LatticeShape::Chain(n), boundary, available_j, 1.0)
    }

    pub fn grid(rows: usize, cols: usize, boundary: Boundary, available_j: &[usize]) -> Result<Self> {
        Self::new(LatticeShape::Grid { rows, cols }, boundary, available_j, 1.0)
    }

    pub fn new(shape: LatticeShape, boundary: Boundary, available_j: &[usize], gamma: f64) -> Result<Self> {
        let mut js = available_j.to_vec();
        js.sort_unstable();
        js.dedup();
        let m = LatticeModel { shape, boundary, available_j: js, gamma, diagonal_shifts: false };
        m.validate()?;
        Ok(m)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_diagonal_shifts(mut self, on: bool) -> Self {
        self.diagonal_shifts = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites();
        if n == 0 {
            return Err(Error::InvalidGeometry("lattice has no sites".into()));
        }
        if self.gamma == 0.0 || !self.gamma.is_finite() {
            return Err(Error::ZeroCoupling);
        }
        if let Some(&j) = self.available_j.iter().find(|&&j| j == 0 || j >= n) {
            return Err(Error::UnavailableShift(j));
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        match self.shape {
            LatticeShape::Chain(n) => n,
            LatticeShape::Grid { rows, cols } => rows * cols,
        }
    }

    pub fn dims(&self) -> usize {
        match self.shape {
            LatticeShape::Chain(_) => 1,
            LatticeShape::Grid { .. } => 2,
        }
    }

    /// Row-major site index; chains are a single row.
    pub fn site(&self, row: usize, col: usize) -> usize {
        row * self.cols() + col
    }

    pub fn rows(&self) -> usize {
        match self.shape {
            LatticeShape::Chain(_) => 1,
            LatticeShape::Grid { rows, .. } => rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self.shape {
            LatticeShape::Chain(n) => n,
            LatticeShape::Grid { cols, .. } => cols,
        }
    }

    pub fn axes(&self) -> Vec<Axis> {
        match self.shape {
            LatticeShape::Chain(_) => alloc::vec![Axis::Row],
            LatticeShape::Grid { .. } if self.diagonal_shifts => {
                alloc::vec![Axis::Row, Axis::Column, Axis::Diagonal]
            }
            LatticeShape::Grid { .. } => alloc::vec![Axis::Row, Axis::Column],
        }
    }

    pub fn is_available(&self, j: usize) -> bool {
        self.available_j.binary_search(&j).is_ok()
    }

    /// Pairs coupled by a displacement of `j` along `axis`, with
    /// multiplicities (a periodic wrap can visit a pair twice).
    pub fn translation_class(&self, j: usize, axis: Axis) -> Vec<ZzTerm> {
        let (rows, cols) = (self.rows(), self.cols());
        let (dr, dc) = match axis {
            Axis::Row => (0, j),
            Axis::Column => (j, 0),
            Axis::Diagonal => (j, j),
        };
        let periodic = self.boundary == Boundary::Periodic;
        let mut counts: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for r in 0..rows {
            for c in 0..cols {
                let (r2, c2) = (r + dr, c + dc);
                let (r2, c2) = if periodic {
                    (r2 % rows, c2 % cols)
                } else if r2 < rows && c2 < cols {
                    (r2, c2)
                } else {
                    continue;
                };
                let (a, b) = (self.site(r, c), self.site(r2, c2));
                if a == b {
                    continue;
                }
                *counts.entry((a.min(b), a.max(b))).or_insert(0.0) += 1.0;
            }
        }
        counts.into_iter().map(|((a, b), w)| ZzTerm::new(a, b, w)).collect()
    }
}

/// Generator and hardware instructions of `U_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeGate {
    /// `sum_axes K_j`.
    pub generator: Hamiltonian,
    /// One round trip per displacement axis.
    pub gates: Vec<RawGate>,
}

/// `U_j = exp(-i theta_j K_j)`, displaced independently along each axis.
pub fn uqs1_gate(model: &LatticeModel, j: usize, theta_j: f64) -> Result<LatticeGate> {
    if !model.is_available(j) {
        return Err(Error::UnavailableShift(j));
    }
    if !theta_j.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = model.n_sites();
    let mut gates = Vec::new();
    let mut strings = Vec::new();
    for axis in model.axes() {
        let terms = model.translation_class(j, axis);
        if terms.is_empty() {
            continue;
        }
        strings.extend(terms.iter().map(|t| PauliString::pair(n, t.a, Pauli::Z, t.b, Pauli::Z, t.weight)));
        gates.push(RawGate::new(GateId::Shift { j, axis }, theta_j, terms));
    }
    Ok(LatticeGate { generator: Hamiltonian::from_terms(n, strings)?, gates })
}
