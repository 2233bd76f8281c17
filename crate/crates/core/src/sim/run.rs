use alloc::string::String;
use alloc::vec::Vec;

use super::apply::{apply_gate_with, apply_layer_with, apply_local_layer, apply_raw_gate};
use super::{ErrorModel, NoiseSource, StateVector, NORM_TOL, RNG_ALGORITHM};
use crate::compiler::{Instruction, PulseSchedule};
use crate::{Error, Result};

const NORM_CHECK_STRIDE: usize = 64;

/// Jitter draws of one instruction: one per qubit for local layers, one
/// for a gate, none without an error model.
#[derive(Clone, Debug, PartialEq)]
pub struct LogEntry {
    pub index: usize,
    pub deltas: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExecutionLog {
    pub rng: String,
    pub error_model: Option<ErrorModel>,
    pub entries: Vec<LogEntry>,
}

impl ExecutionLog {
    pub fn noiseless() -> Self {
        ExecutionLog { rng: String::from(RNG_ALGORITHM), error_model: None, entries: Vec::new() }
    }
}

fn check_size(state: &StateVector, schedule: &PulseSchedule) -> Result<()> {
    if state.n_qubits() != schedule.n_qubits {
        return Err(Error::LengthMismatch { expected: schedule.n_qubits, found: state.n_qubits() });
    }
    Ok(())
}

/// Applies `schedule` in order. Identical `(seed, schedule, state)` give
/// bit-identical results.
pub fn run_schedule(state: &mut StateVector, schedule: &PulseSchedule, err: Option<&ErrorModel>) -> Result<ExecutionLog> {
    let mut source = err.map(|e| e.source());
    let mut log = ExecutionLog { error_model: err.copied(), ..ExecutionLog::noiseless() };
    execute(state, schedule, err.zip(source.as_mut()), Some(&mut log.entries))?;
    Ok(log)
}

/// Like [`run_schedule`] but draws from a caller-owned stream, so that
/// consecutive schedules see consecutive draws.
pub fn run_schedule_with(state: &mut StateVector, schedule: &PulseSchedule, err: &ErrorModel, source: &mut NoiseSource) -> Result<()> {
    execute(state, schedule, Some((err, source)), None)
}

fn execute(
    state: &mut StateVector,
    schedule: &PulseSchedule,
    mut noise: Option<(&ErrorModel, &mut NoiseSource)>,
    mut log: Option<&mut Vec<LogEntry>>,
) -> Result<()> {
    check_size(state, schedule)?;
    if let Some((e, _)) = &noise {
        e.validate()?;
    }
    let crosstalk = noise.as_ref().is_some_and(|(e, _)| e.crosstalk);
    for (index, inst) in schedule.instructions.iter().enumerate() {
        let deltas = match inst {
            Instruction::Local(layer) => {
                let n = noise.as_mut().map(|(e, s)| (&mut **s, e.eta_local));
                apply_local_layer(state, layer, n)?
            }
            Instruction::Gate(gate) => {
                let n = noise.as_mut().map(|(e, s)| (&mut **s, e.eta_int));
                apply_raw_gate(state, gate, n, crosstalk)?.into_iter().collect()
            }
        };
        if let (Some(entries), true) = (log.as_mut(), noise.is_some()) {
            entries.push(LogEntry { index, deltas });
        }
        if (index + 1) % NORM_CHECK_STRIDE == 0 {
            state.check_norm(NORM_TOL)?;
        }
    }
    state.check_norm(NORM_TOL)
}

/// Re-executes `schedule` with the draws recorded in `log`.
pub fn replay_schedule(state: &mut StateVector, schedule: &PulseSchedule, log: &ExecutionLog) -> Result<()> {
    check_size(state, schedule)?;
    let crosstalk = log.error_model.is_some_and(|e| e.crosstalk);
    let noisy = log.error_model.is_some();
    if noisy && log.entries.len() != schedule.len() {
        return Err(Error::ReplayMismatch(log.entries.len().min(schedule.len())));
    }
    for (index, inst) in schedule.instructions.iter().enumerate() {
        let deltas: &[f64] = if noisy {
            let e = &log.entries[index];
            if e.index != index {
                return Err(Error::ReplayMismatch(index));
            }
            &e.deltas
        } else {
            &[]
        };
        match inst {
            Instruction::Local(layer) => {
                if !deltas.is_empty() && deltas.len() != state.n_qubits() {
                    return Err(Error::ReplayMismatch(index));
                }
                layer.validate(state.n_qubits())?;
                apply_layer_with(state, layer, deltas);
            }
            Instruction::Gate(gate) => {
                if deltas.len() > 1 {
                    return Err(Error::ReplayMismatch(index));
                }
                apply_gate_with(state, gate, deltas.first().copied().unwrap_or(0.0), crosstalk);
            }
        }
    }
    state.check_norm(NORM_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{trotter_schedule, TrotterOptions};
    use crate::hardware::{HardwareModel, TrapArrayModel};
    use crate::pauli::Hamiltonian;
    use crate::sim::{exact_evolve, fidelity};

    fn schedule() -> PulseSchedule {
        let h = Hamiltonian::from_labels(&[(0.7, "ZZI"), (0.4, "IXX"), (0.3, "YIY"), (0.2, "XII")]).unwrap();
        let hw = HardwareModel::Traps(TrapArrayModel::chain(3).unwrap());
        trotter_schedule(&h, 0.5, 0.01, &hw, &TrotterOptions::default()).unwrap()
    }

    #[test]
    fn empty_schedule_is_noop() {
        let mut s = StateVector::basis(2, 3).unwrap();
        let log = run_schedule(&mut s, &PulseSchedule::new(2), None).unwrap();
        assert_eq!(s, StateVector::basis(2, 3).unwrap());
        assert!(log.entries.is_empty());
    }

    #[test]
    fn same_seed_same_amplitudes() {
        let sched = schedule();
        let err = ErrorModel::new(0.01, 0.005, 42).unwrap();
        let mut a = StateVector::zero(3).unwrap();
        let mut b = StateVector::zero(3).unwrap();
        let la = run_schedule(&mut a, &sched, Some(&err)).unwrap();
        let lb = run_schedule(&mut b, &sched, Some(&err)).unwrap();
        assert_eq!(a, b);
        assert_eq!(la, lb);
        let mut c = StateVector::zero(3).unwrap();
        run_schedule(&mut c, &sched, Some(&ErrorModel::new(0.01, 0.005, 43).unwrap())).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn replay_reproduces_noisy_run() {
        let sched = schedule();
        let err = ErrorModel::new(0.03, 0.02, 9).unwrap();
        let mut a = StateVector::zero(3).unwrap();
        let log = run_schedule(&mut a, &sched, Some(&err)).unwrap();
        assert_eq!(log.entries.len(), sched.len());
        let mut b = StateVector::zero(3).unwrap();
        replay_schedule(&mut b, &sched, &log).unwrap();
        assert_eq!(a, b);
        let mut short = log.clone();
        short.entries.pop();
        assert!(matches!(replay_schedule(&mut b, &sched, &short), Err(Error::ReplayMismatch(_))));
    }

    #[test]
    fn zero_eta_equals_noiseless() {
        let sched = schedule();
        let mut a = StateVector::zero(3).unwrap();
        let mut b = StateVector::zero(3).unwrap();
        run_schedule(&mut a, &sched, None).unwrap();
        run_schedule(&mut b, &sched, Some(&ErrorModel::new(0.0, 0.0, 1).unwrap())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn compiled_zz_matches_exact() {
        let eps = 0.01;
        let h = Hamiltonian::from_labels(&[(0.8, "ZZ")]).unwrap();
        let hw = HardwareModel::Traps(TrapArrayModel::chain(2).unwrap());
        let sched = trotter_schedule(&h, 0.5, eps, &hw, &TrotterOptions::default()).unwrap();
        let plus = StateVector::from_amplitudes(2, alloc::vec![crate::C64::new(0.5, 0.0); 4]).unwrap();
        let mut s = plus.clone();
        run_schedule(&mut s, &sched, None).unwrap();
        let exact = exact_evolve(&h, 0.5, &plus).unwrap();
        assert!(fidelity(&s, &exact).unwrap() >= 1.0 - 2.0 * eps);
    }
}
