use alloc::vec::Vec;
use core::fmt;

use super::CostReport;
use crate::pauli::{Hamiltonian, LocalLayer, Pauli, PauliString};
use crate::{Error, Result};

/// One `w Z_a Z_b` component of a raw gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZzTerm {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

impl ZzTerm {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        ZzTerm { a, b, weight }
    }
}

/// Lattice displacement direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Row,
    Column,
    Diagonal,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Row => "row",
            Axis::Column => "col",
            Axis::Diagonal => "diag",
        }
    }

    pub fn from_name(s: &str) -> Option<Axis> {
        match s {
            "row" => Some(Axis::Row),
            "col" => Some(Axis::Column),
            "diag" => Some(Axis::Diagonal),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateId {
    /// Hardware-agnostic ZZ gate on explicit pairs.
    Zz,
    /// Lattice gate `U_j` along `axis`.
    Shift { j: usize, axis: Axis },
    /// Trap push of one concurrent group.
    Push { group: usize },
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateId::Zz => write!(f, "zz"),
            GateId::Shift { j, axis } => write!(f, "shift:{j}:{}", axis.name()),
            GateId::Push { group } => write!(f, "push:{group}"),
        }
    }
}

impl GateId {
    pub fn parse(s: &str) -> Option<GateId> {
        let mut parts = s.split(':');
        let head = parts.next()?;
        let id = match head {
            "zz" => GateId::Zz,
            "shift" => {
                let j = parts.next()?.parse().ok()?;
                let axis = Axis::from_name(parts.next()?)?;
                GateId::Shift { j, axis }
            }
            "push" => GateId::Push { group: parts.next()?.parse().ok()? },
            _ => return None,
        };
        parts.next().is_none().then_some(id)
    }
}

/// `exp(-i theta sum_t w_t Z_a Z_b)`.
///
/// `parasitic` lists unintended couplings of the same physical pulse. They
/// are excluded from the ideal gate and applied only under crosstalk realism.
#[derive(Clone, Debug, PartialEq)]
pub struct RawGate {
    pub id: GateId,
    pub theta: f64,
    pub terms: Vec<ZzTerm>,
    pub parasitic: Vec<ZzTerm>,
}

impl RawGate {
    pub fn new(id: GateId, theta: f64, terms: Vec<ZzTerm>) -> Self {
        RawGate { id, theta, terms, parasitic: Vec::new() }
    }

    /// Generator `sum w Z_a Z_b` of the intended part.
    pub fn generator(&self, n_qubits: usize) -> Result<Hamiltonian> {
        zz_hamiltonian(n_qubits, &self.terms)
    }

    /// Sum of `|theta w|` over intended terms.
    pub fn total_angle(&self) -> f64 {
        self.terms.iter().map(|t| (self.theta * t.weight).abs()).sum()
    }
}

pub(crate) fn zz_hamiltonian(n_qubits: usize, terms: &[ZzTerm]) -> Result<Hamiltonian> {
    let strings = terms
        .iter()
        .map(|t| {
            check_pair(t.a, t.b, n_qubits)?;
            Ok(PauliString::pair(n_qubits, t.a, Pauli::Z, t.b, Pauli::Z, t.weight))
        })
        .collect::<Result<Vec<_>>>()?;
    Hamiltonian::from_terms(n_qubits, strings)
}

pub(crate) fn check_pair(a: usize, b: usize, n_qubits: usize) -> Result<()> {
    for index in [a, b] {
        if index >= n_qubits {
            return Err(Error::QubitOutOfRange { index, n_qubits });
        }
    }
    if a == b {
        return Err(Error::SameQubit(a));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instruction {
    Local(LocalLayer),
    Gate(RawGate),
}

/// Time-ordered instruction list.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSchedule {
    pub n_qubits: usize,
    pub instructions: Vec<Instruction>,
    pub cost: Option<CostReport>,
}

impl PulseSchedule {
    pub fn new(n_qubits: usize) -> Self {
        PulseSchedule { n_qubits, instructions: Vec::new(), cost: None }
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn gate_count(&self) -> usize {
        self.gates().count()
    }

    pub fn local_count(&self) -> usize {
        self.instructions.iter().filter(|i| matches!(i, Instruction::Local(_))).count()
    }

    pub fn gates(&self) -> impl Iterator<Item = &RawGate> {
        self.instructions.iter().filter_map(|i| match i {
            Instruction::Gate(g) => Some(g),
            Instruction::Local(_) => None,
        })
    }

    /// Sum of intended `|theta w|` over all gates.
    pub fn total_angle(&self) -> f64 {
        self.gates().map(RawGate::total_angle).sum()
    }

    /// Checks angles, indices and layer sizes.
    pub fn validate(&self) -> Result<()> {
        for inst in &self.instructions {
            match inst {
                Instruction::Local(layer) => layer.validate(self.n_qubits)?,
                Instruction::Gate(g) => {
                    if !g.theta.is_finite() {
                        return Err(Error::NonFinite);
                    }
                    for t in g.terms.iter().chain(&g.parasitic) {
                        check_pair(t.a, t.b, self.n_qubits)?;
                        if !t.weight.is_finite() {
                            return Err(Error::NonFinite);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Appends a local layer, merging it into a preceding one.
    pub fn push_local(&mut self, layer: LocalLayer) {
        if let Some(Instruction::Local(prev)) = self.instructions.last_mut() {
            let merged = prev.followed_by(&layer, self.n_qubits);
            if merged.is_identity() {
                self.instructions.pop();
            } else {
                *prev = merged;
            }
        } else if !layer.is_identity() {
            self.instructions.push(Instruction::Local(layer));
        }
    }
}
