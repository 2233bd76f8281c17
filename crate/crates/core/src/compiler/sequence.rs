use alloc::string::ToString;
use alloc::vec::Vec;

use crate::dense::{self, CMatrix};
use crate::pauli::{conjugate, Hamiltonian, LocalLayer, Pauli, SingleQubitUnitary};
use crate::{Error, Result};

/// Weighted local-unitary layers `(p_i, V_i)`; `sum p_i = 1`.
///
/// A short gate of duration `t` applies `V_i exp(-i H0 p_i t) V_i^†` for
/// each step in order, so it acts as `exp(-i t sum_i p_i V_i H0 V_i^†)` to
/// first order in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlSequence {
    steps: Vec<(f64, LocalLayer)>,
}

pub const WEIGHT_SUM_TOL: f64 = 1e-12;

impl ControlSequence {
    pub fn new(steps: Vec<(f64, LocalLayer)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidWeights("empty sequence".to_string()));
        }
        for (p, _) in &steps {
            if !(*p > 0.0 && *p <= 1.0) {
                return Err(Error::InvalidWeights(alloc::format!("weight {p} outside (0, 1]")));
            }
        }
        let sum: f64 = steps.iter().map(|(p, _)| p).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(alloc::format!("weights sum to {sum}")));
        }
        let sizes: Vec<usize> = steps
            .iter()
            .filter_map(|(_, l)| match l {
                LocalLayer::Inhomogeneous(us) => Some(us.len()),
                LocalLayer::Homogeneous(_) => None,
            })
            .collect();
        if let Some(&first) = sizes.first() {
            if let Some(&bad) = sizes.iter().find(|&&s| s != first) {
                return Err(Error::LengthMismatch { expected: first, found: bad });
            }
        }
        Ok(ControlSequence { steps })
    }

    pub fn identity() -> Self {
        ControlSequence { steps: alloc::vec![(1.0, LocalLayer::identity())] }
    }

    pub fn steps(&self) -> &[(f64, LocalLayer)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.steps.iter().all(|(_, l)| l.is_homogeneous())
    }

    /// Dense unitary of one short gate of duration `t` under `h0`.
    pub fn short_gate_unitary(&self, h0: &Hamiltonian, t: f64) -> Result<CMatrix> {
        let n = h0.n_qubits();
        let eig = dense::eigh(h0);
        let mut total = CMatrix::identity(1 << n, 1 << n);
        for (p, layer) in &self.steps {
            layer.validate(n)?;
            let v = layer_matrix(layer, n);
            let step = &v * eig.evolution(p * t) * v.adjoint();
            total = step * total;
        }
        Ok(total)
    }
}

/// Dense tensor product of a layer.
pub fn layer_matrix(layer: &LocalLayer, n_qubits: usize) -> CMatrix {
    let dim = 1usize << n_qubits;
    CMatrix::from_fn(dim, dim, |r, c| {
        let mut v = crate::C64::new(1.0, 0.0);
        for q in 0..n_qubits {
            let u = layer.unitary_at(q).entries();
            v *= u[(r >> q) & 1][(c >> q) & 1];
        }
        v
    })
}

/// `sum_i p_i V_i h0 V_i^†` in canonical form.
pub fn effective_hamiltonian(seq: &ControlSequence, h0: &Hamiltonian) -> Result<Hamiltonian> {
    let sum: f64 = seq.steps.iter().map(|(p, _)| p).sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidWeights(alloc::format!("weights sum to {sum}")));
    }
    let mut acc = Hamiltonian::zero(h0.n_qubits());
    for (p, layer) in &seq.steps {
        let term = conjugate(h0, layer)?.scaled(*p);
        acc = &acc + &term;
    }
    Ok(acc)
}

pub const PROTOCOLS: [&str; 4] = ["identity", "heisenberg3", "xy2", "antisym2"];

/// Published control sequences.
///
/// * `identity`: `{1, 1}`
/// * `heisenberg3`: `{1/3, 1; 1/3, Rx; 1/3, Ry}` with `R_p = (1 - i sigma_p)/sqrt 2` on every qubit
/// * `xy2`: `{1/2, Rx; 1/2, Ry}` on every qubit
/// * `antisym2`: `{1/2, 1 (x) (1 + i sigma_x)/sqrt 2; 1/2, (1 - i sigma_x)/sqrt 2 (x) 1}` (two qubits)
pub fn protocol_library(name: &str) -> Result<ControlSequence> {
    let rx = LocalLayer::Homogeneous(SingleQubitUnitary::quarter_turn(Pauli::X));
    let ry = LocalLayer::Homogeneous(SingleQubitUnitary::quarter_turn(Pauli::Y));
    let third = 1.0 / 3.0;
    match name {
        "identity" => Ok(ControlSequence::identity()),
        "heisenberg3" => Ok(ControlSequence {
            steps: alloc::vec![(third, LocalLayer::identity()), (third, rx), (third, ry)],
        }),
        "xy2" => Ok(ControlSequence { steps: alloc::vec![(0.5, rx), (0.5, ry)] }),
        "antisym2" => {
            let id = SingleQubitUnitary::identity();
            let v1 = LocalLayer::Inhomogeneous(alloc::vec![id, SingleQubitUnitary::quarter_turn_inverse(Pauli::X)]);
            let v2 = LocalLayer::Inhomogeneous(alloc::vec![SingleQubitUnitary::quarter_turn(Pauli::X), id]);
            Ok(ControlSequence { steps: alloc::vec![(0.5, v1), (0.5, v2)] })
        }
        other => Err(Error::UnknownProtocol(other.to_string())),
    }
}
