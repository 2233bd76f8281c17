use alloc::vec::Vec;

use super::{crosstalk_report, HardwareModel, LatticeModel, TrapArrayModel};
use crate::compiler::{GateId, Instruction, PulseSchedule, RawGate, ZzTerm};
use crate::{Error, Result};

const RATIO_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= RATIO_TOL * a.abs().max(b.abs())
}

/// Binds an abstract schedule to hardware instructions.
///
/// Lattice: every ZZ gate must cover exactly one translation class and every
/// local layer must be homogeneous. Traps: all-pairs gates with the native
/// `1/d^3` profile become one global push; others are split into pair pushes
/// and packed greedily into concurrent groups that pass the crosstalk check.
pub fn realize_schedule(abstract_schedule: &PulseSchedule, hw: &HardwareModel) -> Result<PulseSchedule> {
    if abstract_schedule.n_qubits != hw.n_qubits() {
        return Err(Error::LengthMismatch { expected: hw.n_qubits(), found: abstract_schedule.n_qubits });
    }
    abstract_schedule.validate()?;
    let mut out = PulseSchedule::new(abstract_schedule.n_qubits);
    out.cost = abstract_schedule.cost;
    let mut next_group = 0;
    for inst in &abstract_schedule.instructions {
        match (inst, hw) {
            (Instruction::Local(layer), HardwareModel::Lattice(_)) => {
                if !layer.is_homogeneous() {
                    return Err(Error::Hardware(
                        "inhomogeneous local layer on the lattice requires single qubit addressability".into(),
                    ));
                }
                out.instructions.push(Instruction::Local(layer.clone().normalized()));
            }
            (Instruction::Local(layer), HardwareModel::Traps(_)) => out.instructions.push(Instruction::Local(layer.clone())),
            (Instruction::Gate(g), HardwareModel::Lattice(m)) => {
                if let Some(gate) = lattice_gate(m, g)? {
                    out.instructions.push(Instruction::Gate(gate));
                }
            }
            (Instruction::Gate(g), HardwareModel::Traps(m)) => {
                for gate in trap_gates(m, g, &mut next_group)? {
                    out.instructions.push(Instruction::Gate(gate));
                }
            }
        }
    }
    Ok(out)
}

fn sorted_terms(terms: &[ZzTerm]) -> Vec<ZzTerm> {
    let mut t: Vec<ZzTerm> = terms.iter().filter(|t| t.weight != 0.0).copied().collect();
    t.sort_by_key(|x| (x.a, x.b));
    t
}

fn lattice_gate(m: &LatticeModel, g: &RawGate) -> Result<Option<RawGate>> {
    let terms = sorted_terms(&g.terms);
    if terms.is_empty() || g.theta == 0.0 {
        return Ok(None);
    }
    if let GateId::Shift { j, .. } = g.id {
        if !m.is_available(j) {
            return Err(Error::UnavailableShift(j));
        }
    }
    if matches!(g.id, GateId::Push { .. }) {
        return Err(Error::Hardware("push gates are not available on the lattice".into()));
    }
    for &j in &m.available_j {
        for axis in m.axes() {
            let class = m.translation_class(j, axis);
            if class.len() != terms.len() || class.iter().zip(&terms).any(|(c, t)| (c.a, c.b) != (t.a, t.b)) {
                continue;
            }
            let scale = terms[0].weight / class[0].weight;
            if class.iter().zip(&terms).all(|(c, t)| close(t.weight, scale * c.weight)) {
                return Ok(Some(RawGate::new(GateId::Shift { j, axis }, g.theta * scale, class)));
            }
        }
    }
    Err(Error::Hardware(alloc::format!(
        "gate on {} pairs is not a translation class of an available shift; this requires single qubit addressability",
        terms.len()
    )))
}

fn trap_gates(m: &TrapArrayModel, g: &RawGate, next_group: &mut usize) -> Result<Vec<RawGate>> {
    match g.id {
        GateId::Push { .. } => {
            let mut gate = g.clone();
            gate.id = GateId::Push { group: *next_group };
            *next_group += 1;
            return Ok(alloc::vec![gate]);
        }
        GateId::Shift { .. } => return Err(Error::Hardware("shift gates are not available on a trap array".into())),
        GateId::Zz => {}
    }
    let terms = sorted_terms(&g.terms);
    if terms.is_empty() || g.theta == 0.0 {
        return Ok(Vec::new());
    }
    let n = m.n_ions();
    let bases: Vec<f64> = terms.iter().map(|t| g.theta * t.weight / m.coupling(t.a, t.b)).collect();
    let all_pairs = terms.len() == n * (n - 1) / 2 && n >= 3;
    if all_pairs && bases.iter().all(|b| close(*b, bases[0])) {
        let everyone: Vec<usize> = (0..n).collect();
        let gate = RawGate::new(GateId::Push { group: *next_group }, bases[0], m.push_terms(&everyone)?);
        *next_group += 1;
        return Ok(alloc::vec![gate]);
    }
    let mut groups: Vec<(f64, Vec<(usize, usize)>)> = Vec::new();
    for (t, base) in terms.iter().zip(&bases) {
        let mut placed = false;
        for (gb, pairs) in groups.iter_mut() {
            if !close(*gb, *base) || pairs.iter().any(|&(a, b)| a == t.a || a == t.b || b == t.a || b == t.b) {
                continue;
            }
            let mut trial: Vec<Vec<usize>> = pairs.iter().map(|&(a, b)| alloc::vec![a, b]).collect();
            trial.push(alloc::vec![t.a, t.b]);
            if crosstalk_report(m, &trial)?.concurrent {
                pairs.push((t.a, t.b));
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((*base, alloc::vec![(t.a, t.b)]));
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    for (base, pairs) in groups {
        let intended = pairs.iter().map(|&(a, b)| ZzTerm::new(a, b, m.coupling(a, b))).collect();
        let mut parasitic = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                for (x, y) in [(a, c), (a, d), (b, c), (b, d)] {
                    parasitic.push(ZzTerm::new(x, y, m.coupling(x, y)));
                }
            }
        }
        let mut gate = RawGate::new(GateId::Push { group: *next_group }, base, intended);
        gate.parasitic = parasitic;
        *next_group += 1;
        out.push(gate);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardware::Boundary;
    use crate::pauli::{LocalLayer, Pauli, SingleQubitUnitary};

    fn zz(theta: f64, terms: &[(usize, usize, f64)]) -> Instruction {
        Instruction::Gate(RawGate::new(GateId::Zz, theta, terms.iter().map(|&(a, b, w)| ZzTerm::new(a, b, w)).collect()))
    }

    #[test]
    fn lattice_maps_class_to_shift() {
        let m = LatticeModel::chain(4, Boundary::Open, &[1, 2]).unwrap();
        let mut s = PulseSchedule::new(4);
        s.instructions.push(zz(0.1, &[(0, 2, 0.5), (1, 3, 0.5)]));
        let r = realize_schedule(&s, &HardwareModel::Lattice(m)).unwrap();
        let g = r.gates().next().unwrap();
        assert_eq!(g.id, GateId::Shift { j: 2, axis: crate::compiler::Axis::Row });
        assert!((g.theta - 0.05).abs() < 1e-16);
        assert!((r.total_angle() - s.total_angle()).abs() < 1e-15);
    }

    #[test]
    fn lattice_rejects_partial_class_and_local_addressing() {
        let hw = HardwareModel::Lattice(LatticeModel::chain(4, Boundary::Open, &[1]).unwrap());
        let mut s = PulseSchedule::new(4);
        s.instructions.push(zz(0.1, &[(0, 1, 1.0), (1, 2, 0.5), (2, 3, 1.0)]));
        assert!(matches!(realize_schedule(&s, &hw), Err(Error::Hardware(_))));
        let mut s = PulseSchedule::new(4);
        s.instructions.push(Instruction::Local(LocalLayer::single_site(4, 1, SingleQubitUnitary::pauli(Pauli::X))));
        assert!(matches!(realize_schedule(&s, &hw), Err(Error::Hardware(_))));
    }

    #[test]
    fn traps_detect_global_push() {
        let m = TrapArrayModel::chain(4).unwrap();
        let terms: Vec<(usize, usize, f64)> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b, 0.5 / ((b - a) as f64).powi(3))))
            .collect();
        let mut s = PulseSchedule::new(4);
        s.instructions.push(zz(0.2, &terms));
        let r = realize_schedule(&s, &HardwareModel::Traps(m)).unwrap();
        assert_eq!(r.gate_count(), 1);
        let g = r.gates().next().unwrap();
        assert_eq!(g.id, GateId::Push { group: 0 });
        assert!((g.theta - 0.1).abs() < 1e-16);
        assert!((r.total_angle() - s.total_angle()).abs() < 1e-15);
    }

    #[test]
    fn traps_pack_distant_pairs() {
        let m = TrapArrayModel::chain(13).unwrap().with_threshold(2e-3);
        let mut s = PulseSchedule::new(13);
        s.instructions.push(zz(0.3, &[(0, 1, 1.0), (11, 12, 1.0), (5, 6, 1.0)]));
        let r = realize_schedule(&s, &HardwareModel::Traps(m)).unwrap();
        assert_eq!(r.gate_count(), 2);
        let first = r.gates().next().unwrap();
        assert_eq!(first.terms.len(), 2);
        assert_eq!(first.parasitic.len(), 4);
        assert!((r.total_angle() - s.total_angle()).abs() < 1e-15);
    }
}
