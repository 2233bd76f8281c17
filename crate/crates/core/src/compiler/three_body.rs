use alloc::vec::Vec;

use crate::dense::{self, CMatrix};
use crate::pauli::{commutator, Hamiltonian, LocalLayer, Pauli, SingleQubitUnitary};
use crate::{Error, Result};

use super::sequence::layer_matrix;

/// `exp(-i angle generator)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Evolution {
    pub generator: Hamiltonian,
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceStep {
    Evolve(Evolution),
    Local(LocalLayer),
}

/// Time-ordered list of evolutions and local layers (first step acts first).
#[derive(Clone, Debug, PartialEq)]
pub struct GateSequence {
    pub n_qubits: usize,
    pub steps: Vec<SequenceStep>,
}

impl GateSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Dense product of all steps.
    pub fn unitary(&self) -> Result<CMatrix> {
        dense::check_cap(self.n_qubits, crate::DEFAULT_DENSE_CAP)?;
        let dim = 1 << self.n_qubits;
        let mut total = CMatrix::identity(dim, dim);
        for step in &self.steps {
            let u = match step {
                SequenceStep::Evolve(e) => dense::expm_hermitian(&e.generator, e.angle),
                SequenceStep::Local(layer) => {
                    layer.validate(self.n_qubits)?;
                    layer_matrix(layer, self.n_qubits)
                }
            };
            total = u * total;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeBodyGate {
    pub sequence: GateSequence,
    /// `G = -i [h1, h2]`.
    pub generator: Hamiltonian,
    /// `theta^2`.
    pub effective_time: f64,
}

impl ThreeBodyGate {
    /// `exp([h1, h2] theta^2) = exp(i G theta^2)`, the target of the sequence.
    pub fn ideal_unitary(&self) -> CMatrix {
        dense::expm_hermitian(&self.generator, -self.effective_time)
    }
}

/// Four short two-body evolutions whose product is `exp([h1, h2] theta^2)`
/// up to `O(theta^3)`.
///
/// In time order: `h1` for `theta`, `h2` for `theta`, `h1` for `-theta`,
/// `h2` for `-theta`. The sequence therefore evolves under `-G`; swap the
/// arguments to evolve forward under `G`.
pub fn three_body_gate(h1: &Hamiltonian, h2: &Hamiltonian, theta: f64) -> Result<ThreeBodyGate> {
    let generator = commutator(h1, h2)?.into_generator();
    let evolve = |h: &Hamiltonian, angle| SequenceStep::Evolve(Evolution { generator: h.clone(), angle });
    let steps = alloc::vec![evolve(h1, theta), evolve(h2, theta), evolve(h1, -theta), evolve(h2, -theta)];
    Ok(ThreeBodyGate {
        sequence: GateSequence { n_qubits: h1.n_qubits(), steps },
        generator,
        effective_time: theta * theta,
    })
}

/// `U, V^†, U, V` with `U = exp(-i theta raw)` and `V = i sigma_x` on every
/// qubit. Local `Z` phases cancel, leaving `exp(-2 i theta sum gamma_ab Z_a Z_b)`.
pub fn decoupling_echo(raw: &Hamiltonian, theta: f64) -> Result<GateSequence> {
    if let Some(bad) = raw.terms().iter().find(|t| t.ops().iter().any(|p| matches!(p, Pauli::X | Pauli::Y))) {
        return Err(Error::NonDiagonalGenerator(bad.label()));
    }
    if let Some(bad) = raw.terms().iter().find(|t| t.weight() > 2) {
        return Err(Error::NonDiagonalGenerator(bad.label()));
    }
    let i = crate::C64::new(0.0, 1.0);
    let zero = crate::C64::new(0.0, 0.0);
    let v = SingleQubitUnitary::new_unchecked([[zero, i], [i, zero]]);
    let u = SequenceStep::Evolve(Evolution { generator: raw.clone(), angle: theta });
    Ok(GateSequence {
        n_qubits: raw.n_qubits(),
        steps: alloc::vec![
            u.clone(),
            SequenceStep::Local(LocalLayer::Homogeneous(v.adjoint())),
            u,
            SequenceStep::Local(LocalLayer::Homogeneous(v)),
        ],
    })
}

/// Two-body part of a `Z`/`ZZ` generator, doubled: the echo's ideal generator.
pub fn echo_ideal_generator(raw: &Hamiltonian) -> Hamiltonian {
    let keep = raw.terms().iter().filter(|t| t.weight() != 1).cloned();
    Hamiltonian::from_terms(raw.n_qubits(), keep).map(|h| h.scaled(2.0)).unwrap_or_else(|_| Hamiltonian::zero(raw.n_qubits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::operator_distance;

    fn h(label: &str) -> Hamiltonian {
        Hamiltonian::from_labels(&[(1.0, label)]).unwrap()
    }

    #[test]
    fn three_body_generator() {
        let g = three_body_gate(&h("IZZ"), &h("XXI"), 0.1).unwrap();
        assert_eq!(g.generator, Hamiltonian::from_labels(&[(2.0, "XYZ")]).unwrap());
        assert_eq!(g.sequence.len(), 4);
    }

    #[test]
    fn commuting_pair_is_identity() {
        let g = three_body_gate(&h("IZZ"), &h("IZZ"), 0.3).unwrap();
        assert!(g.generator.is_empty());
        let u = g.sequence.unitary().unwrap();
        assert!(operator_distance(&u, &CMatrix::identity(8, 8)) < 1e-12);
    }

    #[test]
    fn third_order_remainder() {
        let dev = |theta: f64| {
            let g = three_body_gate(&h("IZZ"), &h("XXI"), theta).unwrap();
            operator_distance(&g.sequence.unitary().unwrap(), &g.ideal_unitary())
        };
        let ratio = dev(0.05) / dev(0.025);
        assert!((6.0..=10.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn echo_cancels_local_terms() {
        let raw = Hamiltonian::from_labels(&[(1.0, "ZI"), (1.0, "ZZ")]).unwrap();
        let seq = decoupling_echo(&raw, 0.3).unwrap();
        let ideal = dense::expm_hermitian(&h("ZZ"), 0.6);
        assert!(operator_distance(&seq.unitary().unwrap(), &ideal) < 1e-12);
        let ideal2 = dense::expm_hermitian(&echo_ideal_generator(&raw), 0.3);
        assert!(operator_distance(&ideal, &ideal2) < 1e-12);
    }

    #[test]
    fn echo_of_fields_only_is_identity() {
        let raw = Hamiltonian::from_labels(&[(0.4, "ZII"), (-1.1, "IZI"), (0.7, "IIZ")]).unwrap();
        let u = decoupling_echo(&raw, 0.9).unwrap().unitary().unwrap();
        assert!(operator_distance(&u, &CMatrix::identity(8, 8)) < 1e-12);
    }

    #[test]
    fn echo_rejects_transverse_terms() {
        let raw = Hamiltonian::from_labels(&[(1.0, "XI"), (1.0, "ZZ")]).unwrap();
        assert!(matches!(decoupling_echo(&raw, 0.1), Err(Error::NonDiagonalGenerator(_))));
    }
}
