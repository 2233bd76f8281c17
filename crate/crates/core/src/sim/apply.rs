use alloc::vec::Vec;

use super::{NoiseSource, StateVector};
use crate::compiler::{check_pair, RawGate, ZzTerm};
use crate::pauli::{LocalLayer, SingleQubitUnitary};
use crate::{Error, Result, C64};

pub(crate) fn apply_single(amps: &mut [C64], q: usize, u: &SingleQubitUnitary) {
    let [[a, b], [c, d]] = *u.entries();
    let bit = 1usize << q;
    let dim = amps.len();
    let mut base = 0;
    while base < dim {
        for i in base..base + bit {
            let (x, y) = (amps[i], amps[i | bit]);
            amps[i] = a * x + b * y;
            amps[i | bit] = c * x + d * y;
        }
        base += 2 * bit;
    }
}

/// Applies `layer` with explicit per-qubit jitter `deltas` (empty for none).
pub(crate) fn apply_layer_with(state: &mut StateVector, layer: &LocalLayer, deltas: &[f64]) {
    let n = state.n_qubits();
    for q in 0..n {
        let u = layer.unitary_at(q);
        let delta = deltas.get(q).copied().unwrap_or(0.0);
        if delta == 0.0 {
            if !u.is_identity() {
                apply_single(state.amplitudes_mut(), q, u);
            }
        } else {
            apply_single(state.amplitudes_mut(), q, &u.with_scaled_angle(1.0 + delta));
        }
    }
}

/// Applies one single-qubit unitary per qubit. With jitter, the rotation
/// angle of each qubit's unitary is scaled by `1 + delta`, one independent
/// draw per qubit. Returns the draws.
pub fn apply_local_layer(state: &mut StateVector, layer: &LocalLayer, noise: Option<(&mut NoiseSource, f64)>) -> Result<Vec<f64>> {
    layer.validate(state.n_qubits())?;
    let deltas: Vec<f64> = match noise {
        Some((source, eta)) => (0..state.n_qubits()).map(|_| source.delta(eta)).collect(),
        None => Vec::new(),
    };
    apply_layer_with(state, layer, &deltas);
    Ok(deltas)
}

/// Multiplies each amplitude by `exp(-i theta sum_t w_t s_a s_b)`, `s_q = +-1`
/// from bit `q`.
pub(crate) fn apply_zz_phase(state: &mut StateVector, theta: f64, terms: &[ZzTerm]) {
    if theta == 0.0 || terms.is_empty() {
        return;
    }
    let masks: Vec<(usize, f64)> = terms.iter().map(|t| ((1usize << t.a) | (1usize << t.b), t.weight)).collect();
    for (k, amp) in state.amplitudes_mut().iter_mut().enumerate() {
        let mut s = 0.0;
        for &(m, w) in &masks {
            // s_a s_b = -1 exactly when one of the two bits is set.
            if (k & m).count_ones() == 1 {
                s -= w;
            } else {
                s += w;
            }
        }
        *amp *= C64::from_polar(1.0, -theta * s);
    }
}

fn check_terms(n: usize, terms: &[ZzTerm]) -> Result<()> {
    terms.iter().try_for_each(|t| check_pair(t.a, t.b, n))
}

/// Independent gates `exp(-i theta Z_a Z_b)`, one jitter draw per gate.
pub fn apply_zz_gates(
    state: &mut StateVector,
    gates: &[(usize, usize, f64)],
    mut noise: Option<(&mut NoiseSource, f64)>,
) -> Result<Vec<f64>> {
    let n = state.n_qubits();
    for &(a, b, theta) in gates {
        check_pair(a, b, n)?;
        if !theta.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    let mut deltas = Vec::new();
    for &(a, b, theta) in gates {
        let delta = match noise.as_mut() {
            Some((source, eta)) => {
                let d = source.delta(*eta);
                deltas.push(d);
                d
            }
            None => 0.0,
        };
        apply_zz_phase(state, theta * (1.0 + delta), &[ZzTerm::new(a, b, 1.0)]);
    }
    Ok(deltas)
}

pub(crate) fn apply_gate_with(state: &mut StateVector, gate: &RawGate, delta: f64, crosstalk: bool) {
    let theta = gate.theta * (1.0 + delta);
    apply_zz_phase(state, theta, &gate.terms);
    if crosstalk {
        apply_zz_phase(state, theta, &gate.parasitic);
    }
}

/// One raw gate; a single jitter draw scales the whole pulse.
pub fn apply_raw_gate(
    state: &mut StateVector,
    gate: &RawGate,
    noise: Option<(&mut NoiseSource, f64)>,
    crosstalk: bool,
) -> Result<Option<f64>> {
    check_terms(state.n_qubits(), &gate.terms)?;
    check_terms(state.n_qubits(), &gate.parasitic)?;
    if !gate.theta.is_finite() {
        return Err(Error::NonFinite);
    }
    let delta = noise.map(|(source, eta)| source.delta(eta));
    apply_gate_with(state, gate, delta.unwrap_or(0.0), crosstalk);
    Ok(delta)
}
