use alloc::vec::Vec;

use super::{homogeneous_feasibility, ControlSequence};
use crate::pauli::{CoeffMatrix, LocalLayer, Pauli, SingleQubitUnitary};
use crate::{Error, Result};

/// Homogeneous sequence realizing a diagonal target from `gamma Z (x) Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSynthesis {
    /// Weights on the `XX`, `YY`, `ZZ` frames.
    pub weights: [f64; 3],
    /// Time cost `c`: the target equals `c` times the effective Hamiltonian.
    pub rescale: f64,
    pub sequence: ControlSequence,
}

/// Homogeneous layer conjugating `Z (x) Z` onto `sigma_axis (x) sigma_axis`.
pub(crate) fn frame_layer(axis: usize) -> LocalLayer {
    match axis {
        0 => LocalLayer::Homogeneous(SingleQubitUnitary::quarter_turn(Pauli::Y)),
        1 => LocalLayer::Homogeneous(SingleQubitUnitary::quarter_turn(Pauli::X)),
        _ => LocalLayer::identity(),
    }
}

/// Frame order used by emitted sequences: ZZ, YY, XX (the `heisenberg3` order).
pub(crate) const FRAME_ORDER: [usize; 3] = [2, 1, 0];

/// Solves the nonnegative weights for `diag(dx, dy, dz)`; the achieved cost
/// `(dx + dy + dz) / gamma` is the homogeneous optimum for diagonal targets.
pub fn synthesize_diagonal(target: &CoeffMatrix, gamma: f64) -> Result<DiagonalSynthesis> {
    let scale = target.max_abs();
    if !target.is_diagonal(1e-12 * scale.max(1.0)) {
        return Err(Error::NotDiagonal);
    }
    let f = homogeneous_feasibility(target, gamma)?;
    if !f.feasible {
        return Err(Error::Infeasible { gamma, eigenvalues: f.eigenvalues });
    }
    let d = target.diag();
    let rescale = (d[0] + d[1] + d[2]) / gamma;
    if rescale == 0.0 {
        return Ok(DiagonalSynthesis { weights: [0.0, 0.0, 1.0], rescale: 0.0, sequence: ControlSequence::identity() });
    }
    let mut weights = [0.0; 3];
    for (w, di) in weights.iter_mut().zip(d) {
        // Vanishing entries may carry either sign at rounding level.
        *w = (di / (gamma * rescale)).max(0.0);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let steps: Vec<(f64, LocalLayer)> = FRAME_ORDER
        .iter()
        .filter(|&&axis| weights[axis] > 0.0)
        .map(|&axis| (weights[axis], frame_layer(axis)))
        .collect();
    Ok(DiagonalSynthesis { weights, rescale, sequence: ControlSequence::new(steps)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{effective_hamiltonian, protocol_library};
    use crate::pauli::{from_coeff_matrix, Hamiltonian};

    fn check_realizes(target: &CoeffMatrix, gamma: f64) -> DiagonalSynthesis {
        let s = synthesize_diagonal(target, gamma).unwrap();
        let zz = Hamiltonian::from_labels(&[(gamma, "ZZ")]).unwrap();
        let eff = effective_hamiltonian(&s.sequence, &zz).unwrap().scaled(s.rescale);
        assert!(eff.approx_eq(&from_coeff_matrix(target), 1e-14), "{eff}");
        s
    }

    #[test]
    fn heisenberg_target_reproduces_published_sequence() {
        let j = 1.1;
        let s = check_realizes(&CoeffMatrix::diagonal([j; 3]), j);
        assert!((s.rescale - 3.0).abs() < 1e-15);
        for w in s.weights {
            assert!((w - 1.0 / 3.0).abs() < 1e-15);
        }
        let published = protocol_library("heisenberg3").unwrap();
        for ((p, l), (q, m)) in s.sequence.steps().iter().zip(published.steps()) {
            assert!((p - q).abs() < 1e-15);
            assert!(l.approx_eq(m, 1, 1e-15));
        }
    }

    #[test]
    fn self_target_is_identity() {
        let gamma = 0.4;
        let s = check_realizes(&CoeffMatrix::diagonal([0.0, 0.0, gamma]), gamma);
        assert_eq!(s.sequence, ControlSequence::identity());
        assert!((s.rescale - 1.0).abs() < 1e-15);
    }

    #[test]
    fn anisotropic_target() {
        // diag(2g, g, 0): weights (2/3, 1/3, 0), rescale 3.
        let gamma = 0.9;
        let s = check_realizes(&CoeffMatrix::diagonal([2.0 * gamma, gamma, 0.0]), gamma);
        assert!((s.weights[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.weights[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.weights[2], 0.0);
        assert!((s.rescale - 3.0).abs() < 1e-14);
        assert_eq!(s.sequence.len(), 2);
    }

    #[test]
    fn negative_coupling_with_negative_gamma() {
        check_realizes(&CoeffMatrix::diagonal([-0.5, -0.25, -1.0]), -2.0);
    }

    #[test]
    fn infeasible_and_non_diagonal_targets() {
        assert!(matches!(
            synthesize_diagonal(&CoeffMatrix::diagonal([1.0, -1.0, 0.0]), 1.0),
            Err(Error::Infeasible { .. })
        ));
        let mut m = CoeffMatrix::diagonal([1.0; 3]);
        m.0[0][1] = 0.5;
        m.0[1][0] = 0.5;
        assert_eq!(synthesize_diagonal(&m, 1.0), Err(Error::NotDiagonal));
    }
}
