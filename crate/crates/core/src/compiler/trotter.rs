#[allow(unused_imports)]
use num_traits::Float;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::synthesis::{frame_layer, FRAME_ORDER};
use super::{homogeneous_feasibility, GateId, Instruction, PulseSchedule, RawGate, ZzTerm};
use crate::hardware::{HardwareModel, LatticeModel};
use crate::pauli::{conjugate, CoeffMatrix, Hamiltonian, LocalLayer, Pauli, PauliString, SingleQubitUnitary};
use crate::{Error, Result};

const REL_TOL: f64 = 1e-12;

/// Cost bookkeeping of a Trotterized simulation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostReport {
    /// `c = T / T'`.
    pub time_cost: f64,
    /// Control operations per short gate.
    pub n: usize,
    /// Number of short gates (Trotter cycles).
    pub l: usize,
    /// Physical duration of one short gate.
    pub step_t: f64,
    /// `n L / T`.
    pub chi: f64,
    pub epsilon: f64,
    pub t_prime: f64,
}

impl CostReport {
    /// `L = ceil(c^2 T'^2 / eps)`, with values within rounding of an integer
    /// taken as that integer.
    pub fn new(time_cost: f64, n: usize, t_prime: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!("error budget {epsilon} must be positive")));
        }
        if !(t_prime >= 0.0 && t_prime.is_finite() && time_cost >= 0.0 && time_cost.is_finite()) {
            return Err(Error::InvalidArgument("simulated time and cost must be finite and nonnegative".into()));
        }
        let l = gate_count(time_cost * time_cost * t_prime * t_prime / epsilon);
        Ok(Self::with_gate_count(time_cost, n, t_prime, epsilon, l))
    }

    fn with_gate_count(time_cost: f64, n: usize, t_prime: f64, epsilon: f64, l: usize) -> Self {
        let total = time_cost * t_prime;
        let step_t = if l == 0 { 0.0 } else { total / l as f64 };
        let chi = if total > 0.0 { (n * l) as f64 / total } else { 0.0 };
        CostReport { time_cost, n, l, step_t, chi, epsilon, t_prime }
    }

    /// Total physical time `T = c T'`.
    pub fn total_time(&self) -> f64 {
        self.time_cost * self.t_prime
    }

    /// Simulated time per cycle `T' / L`.
    pub fn delta(&self) -> f64 {
        if self.l == 0 {
            0.0
        } else {
            self.t_prime / self.l as f64
        }
    }
}

fn gate_count(x: f64) -> usize {
    let r = x.round();
    let l = if (x - r).abs() <= 1e-9 * x.max(1.0) { r } else { x.ceil() };
    l as usize
}

/// How pair couplings of a trap array are turned into gates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum PairRealization {
    /// One gate per pair and cycle with angle proportional to the coupling.
    #[default]
    Angle,
    /// Gates of a fixed angle, repeated at a rate proportional to the coupling.
    Frequency { unit_angle: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrotterOptions {
    pub pairs: PairRealization,
}

/// ZZ gate whose angle is `rate * delta` for a cycle of simulated time `delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlannedGate {
    pub terms: Vec<ZzTerm>,
    pub rate: f64,
}

/// Gates conjugated by `layer`: emitted as `layer^†`, gates, `layer`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockStep {
    pub layer: LocalLayer,
    pub gates: Vec<PlannedGate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub steps: Vec<BlockStep>,
}

/// One Trotter cycle: local fields first, then the pair blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclePlan {
    pub n_qubits: usize,
    pub gamma: f64,
    /// Field vector `(b_x, b_y, b_z)` per qubit.
    pub field: Vec<[f64; 3]>,
    pub blocks: Vec<Block>,
    /// Pure-ZZ pairs realized by gate frequency; `weight` is the coupling.
    pub frequency: Vec<ZzTerm>,
    pub unit_angle: Option<f64>,
}

impl CyclePlan {
    /// `c`: raw-gate time per unit simulated time.
    pub fn time_cost(&self) -> f64 {
        let rates: f64 = self.gates().map(|g| g.rate.abs()).sum();
        let freq: f64 = self.frequency.iter().map(|t| t.weight.abs()).sum();
        (rates + freq) / self.gamma.abs()
    }

    /// `n`: conjugation steps carrying gates.
    pub fn control_steps(&self) -> usize {
        self.blocks.iter().map(|b| b.steps.len()).sum::<usize>() + self.frequency.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &PlannedGate> {
        self.blocks.iter().flat_map(|b| b.steps.iter().flat_map(|s| s.gates.iter()))
    }

    pub fn has_field(&self) -> bool {
        self.field.iter().flatten().any(|v| *v != 0.0)
    }

    pub fn is_empty(&self) -> bool {
        !self.has_field() && self.blocks.is_empty() && self.frequency.is_empty()
    }

    /// First-order Hamiltonian generated per unit simulated time.
    pub fn effective_hamiltonian(&self) -> Result<Hamiltonian> {
        let n = self.n_qubits;
        let mut strings = Vec::new();
        for (q, b) in self.field.iter().enumerate() {
            for (axis, v) in b.iter().enumerate() {
                strings.push(PauliString::single(n, q, Pauli::from_axis(axis), *v));
            }
        }
        for t in &self.frequency {
            strings.push(PauliString::pair(n, t.a, Pauli::Z, t.b, Pauli::Z, t.weight));
        }
        let mut acc = Hamiltonian::from_terms(n, strings)?;
        for block in &self.blocks {
            for step in &block.steps {
                let raw = Hamiltonian::from_terms(
                    n,
                    step.gates.iter().flat_map(|g| {
                        g.terms.iter().map(move |t| PauliString::pair(n, t.a, Pauli::Z, t.b, Pauli::Z, g.rate * t.weight))
                    }),
                )?;
                acc = &acc + &conjugate(&raw, &step.layer)?;
            }
        }
        Ok(acc)
    }

    /// `exp(-i b . sigma delta)` on each qubit.
    pub fn field_layer(&self, delta: f64) -> LocalLayer {
        let us = self
            .field
            .iter()
            .map(|b| {
                let norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
                if norm == 0.0 {
                    SingleQubitUnitary::identity()
                } else {
                    SingleQubitUnitary::rotation_unchecked([b[0] / norm, b[1] / norm, b[2] / norm], norm * delta)
                }
            })
            .collect();
        LocalLayer::Inhomogeneous(us).normalized()
    }

    /// Appends one cycle of simulated time `delta`. `acc` holds the
    /// frequency-mode phase accumulators (one per frequency pair).
    pub fn emit(&self, delta: f64, schedule: &mut PulseSchedule, acc: &mut [f64]) {
        if self.has_field() {
            schedule.push_local(self.field_layer(delta));
        }
        for block in &self.blocks {
            for step in &block.steps {
                schedule.push_local(step.layer.adjoint());
                for g in &step.gates {
                    schedule.instructions.push(Instruction::Gate(RawGate::new(GateId::Zz, g.rate * delta, g.terms.clone())));
                }
                schedule.push_local(step.layer.clone());
            }
        }
        if let Some(unit) = self.unit_angle {
            let sign = self.gamma.signum();
            for (t, a) in self.frequency.iter().zip(acc.iter_mut()) {
                *a += t.weight.abs() * delta;
                let flip = t.weight.signum() != sign;
                while *a >= unit * (1.0 - REL_TOL) {
                    *a -= unit;
                    let x = LocalLayer::single_site(self.n_qubits, t.a, SingleQubitUnitary::pauli(Pauli::X)).normalized();
                    if flip {
                        schedule.push_local(x.clone());
                    }
                    schedule.instructions.push(Instruction::Gate(RawGate::new(
                        GateId::Zz,
                        sign * unit,
                        alloc::vec![ZzTerm::new(t.a, t.b, 1.0)],
                    )));
                    if flip {
                        schedule.push_local(x);
                    }
                }
            }
        }
    }

    /// A single cycle as a schedule.
    pub fn cycle_schedule(&self, delta: f64) -> PulseSchedule {
        let mut s = PulseSchedule::new(self.n_qubits);
        let mut acc = alloc::vec![0.0; self.frequency.len()];
        self.emit(delta, &mut s, &mut acc);
        s
    }
}

/// Single-qubit Clifford `u` with `u Z u^† = sign * sigma_axis`.
pub(crate) fn z_to_axis(axis: usize, sign: f64) -> SingleQubitUnitary {
    let plus = sign > 0.0;
    match (axis, plus) {
        (2, true) => SingleQubitUnitary::identity(),
        (2, false) => SingleQubitUnitary::pauli(Pauli::X),
        (1, true) => SingleQubitUnitary::quarter_turn_inverse(Pauli::X),
        (1, false) => SingleQubitUnitary::quarter_turn(Pauli::X),
        (0, true) => SingleQubitUnitary::quarter_turn(Pauli::Y),
        _ => SingleQubitUnitary::quarter_turn_inverse(Pauli::Y),
    }
}

struct Split {
    field: Vec<[f64; 3]>,
    pairs: BTreeMap<(usize, usize), CoeffMatrix>,
}

fn split_target(target: &Hamiltonian) -> Result<Split> {
    let n = target.n_qubits();
    let mut field = alloc::vec![[0.0; 3]; n];
    let mut pairs: BTreeMap<(usize, usize), CoeffMatrix> = BTreeMap::new();
    for term in target.terms() {
        let sites: Vec<usize> = term.support().collect();
        let axis = |q: usize| term.ops()[q].axis().unwrap_or(0);
        match sites.as_slice() {
            [] => {}
            [q] => field[*q][axis(*q)] += term.coeff(),
            [a, b] => pairs.entry((*a, *b)).or_insert_with(CoeffMatrix::zero).0[axis(*a)][axis(*b)] += term.coeff(),
            _ => return Err(Error::ManyBodyTerm(term.label())),
        }
    }
    Ok(Split { field, pairs })
}

fn sign_compatible(d: [f64; 3], gamma: f64) -> bool {
    d.iter().all(|v| *v == 0.0 || v.signum() == gamma.signum())
}

fn diagonal_of(m: &CoeffMatrix) -> Option<[f64; 3]> {
    m.is_diagonal(REL_TOL * m.max_abs()).then(|| m.diag())
}

/// Plans one Trotter cycle of `target` on `hw`.
///
/// Diagonal, sign-compatible pair couplings share one homogeneous block
/// with frames `ZZ`, `YY`, `XX`. On a trap array every other pair is sliced
/// into its Pauli terms, each mapped onto `Z (x) Z` by single-qubit Cliffords.
pub fn plan_cycle(target: &Hamiltonian, hw: &HardwareModel, options: &TrotterOptions) -> Result<CyclePlan> {
    hw.validate()?;
    let n = hw.n_qubits();
    if target.n_qubits() != n {
        return Err(Error::LengthMismatch { expected: n, found: target.n_qubits() });
    }
    let split = split_target(target)?;
    let gamma = hw.gamma();
    let mut plan = CyclePlan {
        n_qubits: n,
        gamma,
        field: split.field,
        blocks: Vec::new(),
        frequency: Vec::new(),
        unit_angle: None,
    };
    match hw {
        HardwareModel::Lattice(m) => plan_lattice(&mut plan, m, split.pairs)?,
        HardwareModel::Traps(_) => plan_traps(&mut plan, split.pairs, options)?,
    }
    Ok(plan)
}

fn homogeneous_block(entries: &[(Vec<ZzTerm>, [f64; 3])], per_class: bool, gamma: f64) -> Option<Block> {
    let mut steps = Vec::new();
    for axis in FRAME_ORDER {
        let mut gates = Vec::new();
        if per_class {
            for (terms, d) in entries {
                if d[axis] != 0.0 {
                    gates.push(PlannedGate { terms: terms.clone(), rate: d[axis] });
                }
            }
        } else {
            let coeffs: Vec<(ZzTerm, f64)> = entries
                .iter()
                .filter(|(_, d)| d[axis] != 0.0)
                .map(|(terms, d)| (terms[0], d[axis] * terms[0].weight))
                .collect();
            if let Some(scale) = coeffs.iter().map(|(_, c)| c.abs()).reduce(f64::max) {
                let rate = scale * gamma.signum();
                let terms = coeffs.iter().map(|(t, c)| ZzTerm::new(t.a, t.b, c / rate)).collect();
                gates.push(PlannedGate { terms, rate });
            }
        }
        if !gates.is_empty() {
            steps.push(BlockStep { layer: frame_layer(axis), gates });
        }
    }
    (!steps.is_empty()).then_some(Block { steps })
}

fn plan_lattice(plan: &mut CyclePlan, m: &LatticeModel, mut pairs: BTreeMap<(usize, usize), CoeffMatrix>) -> Result<()> {
    let first = plan.field.first().copied().unwrap_or([0.0; 3]);
    let scale = plan.field.iter().flatten().fold(0.0, |a: f64, v| a.max(v.abs()));
    if plan.field.iter().any(|b| (0..3).any(|i| (b[i] - first[i]).abs() > REL_TOL * scale)) {
        return Err(Error::Hardware(
            "site-dependent local fields on the lattice require single qubit addressability".into(),
        ));
    }
    for f in plan.field.iter_mut() {
        *f = first;
    }
    for mat in pairs.values() {
        let asym = mat.asymmetry();
        if asym > super::SYMMETRY_TOL {
            return Err(Error::Asymmetric(asym));
        }
        let feas = homogeneous_feasibility(mat, plan.gamma)?;
        if !feas.feasible {
            return Err(Error::Infeasible { gamma: plan.gamma, eigenvalues: feas.eigenvalues });
        }
        if diagonal_of(mat).is_none() {
            return Err(Error::NotDiagonal);
        }
    }
    let mut classes: Vec<(Vec<ZzTerm>, [f64; 3])> = Vec::new();
    for &j in &m.available_j {
        for axis in m.axes() {
            let class = m.translation_class(j, axis);
            if class.is_empty() || !class.iter().all(|t| pairs.contains_key(&(t.a, t.b))) {
                continue;
            }
            let d0 = pairs[&(class[0].a, class[0].b)].diag().map(|v| v / class[0].weight);
            let uniform = class.iter().all(|t| {
                let d = pairs[&(t.a, t.b)].diag();
                (0..3).all(|i| (d[i] - d0[i] * t.weight).abs() <= REL_TOL * d[i].abs().max(d0[i].abs()))
            });
            if !uniform {
                continue;
            }
            for t in &class {
                pairs.remove(&(t.a, t.b));
            }
            classes.push((class, d0));
        }
    }
    if let Some((&(a, b), _)) = pairs.iter().next() {
        return Err(Error::Hardware(alloc::format!(
            "coupling ({a},{b}) is not part of a uniform translation class of an available shift; \
             non-translation-invariant targets require single qubit addressability"
        )));
    }
    plan.blocks.extend(homogeneous_block(&classes, true, plan.gamma));
    Ok(())
}

fn plan_traps(plan: &mut CyclePlan, pairs: BTreeMap<(usize, usize), CoeffMatrix>, options: &TrotterOptions) -> Result<()> {
    let gamma = plan.gamma;
    if let PairRealization::Frequency { unit_angle } = options.pairs {
        if !(unit_angle > 0.0 && unit_angle.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!("unit angle {unit_angle} must be positive")));
        }
        for (&(a, b), mat) in &pairs {
            match diagonal_of(mat) {
                Some([x, y, z]) if x == 0.0 && y == 0.0 => plan.frequency.push(ZzTerm::new(a, b, z)),
                _ => {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "frequency realization needs pure ZZ couplings; pair ({a},{b}) has other terms"
                    )))
                }
            }
        }
        plan.unit_angle = Some(unit_angle);
        return Ok(());
    }
    let mut homogeneous = Vec::new();
    let mut sliced = Vec::new();
    for (&(a, b), mat) in &pairs {
        match diagonal_of(mat) {
            Some(d) if sign_compatible(d, gamma) => homogeneous.push((alloc::vec![ZzTerm::new(a, b, 1.0)], d)),
            _ => sliced.push(((a, b), *mat)),
        }
    }
    plan.blocks.extend(homogeneous_block(&homogeneous, false, gamma));
    let n = plan.n_qubits;
    for ((a, b), mat) in sliced {
        let mut steps = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let v = mat.0[i][j];
                if v == 0.0 {
                    continue;
                }
                let sign = v.signum() * gamma.signum();
                let mut us = alloc::vec![SingleQubitUnitary::identity(); n];
                us[a] = z_to_axis(i, 1.0);
                us[b] = z_to_axis(j, sign);
                steps.push(BlockStep {
                    layer: LocalLayer::Inhomogeneous(us).normalized(),
                    gates: alloc::vec![PlannedGate {
                        terms: alloc::vec![ZzTerm::new(a, b, 1.0)],
                        rate: v.abs() * gamma.signum(),
                    }],
                });
            }
        }
        plan.blocks.push(Block { steps });
    }
    Ok(())
}

/// Compiles `exp(-i target T')` into `L` identical cycles with error
/// budget `epsilon`, as an abstract (hardware-agnostic) schedule.
pub fn trotter_schedule(
    target: &Hamiltonian,
    t_prime: f64,
    epsilon: f64,
    hw: &HardwareModel,
    options: &TrotterOptions,
) -> Result<PulseSchedule> {
    let plan = plan_cycle(target, hw, options)?;
    let mut cost = CostReport::new(plan.time_cost(), plan.control_steps(), t_prime, epsilon)?;
    if plan.is_empty() || t_prime == 0.0 {
        cost = CostReport::with_gate_count(cost.time_cost, cost.n, t_prime, epsilon, 0);
    } else if cost.l == 0 {
        // Local fields only: one exact layer.
        cost = CostReport::with_gate_count(cost.time_cost, cost.n, t_prime, epsilon, 1);
    }
    let mut schedule = PulseSchedule::new(plan.n_qubits);
    let delta = cost.delta();
    let mut acc = alloc::vec![0.0; plan.frequency.len()];
    for _ in 0..cost.l {
        plan.emit(delta, &mut schedule, &mut acc);
    }
    schedule.cost = Some(cost);
    Ok(schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardware::{Boundary, TrapArrayModel};

    fn traps(n: usize) -> HardwareModel {
        HardwareModel::Traps(TrapArrayModel::chain(n).unwrap())
    }

    #[test]
    fn z_to_axis_maps_z() {
        for axis in 0..3 {
            for sign in [1.0, -1.0] {
                let layer = LocalLayer::Homogeneous(z_to_axis(axis, sign));
                let z = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
                let got = conjugate(&z, &layer).unwrap();
                let expect = Hamiltonian::from_terms(1, [PauliString::single(1, 0, Pauli::from_axis(axis), sign)]).unwrap();
                assert!(got.approx_eq(&expect, 1e-15), "axis {axis} sign {sign}: {got}");
            }
        }
    }

    #[test]
    fn zz_example_cost() {
        let h = Hamiltonian::from_labels(&[(1.0, "ZZ")]).unwrap();
        let s = trotter_schedule(&h, 1.0, 0.01, &traps(2), &TrotterOptions::default()).unwrap();
        let c = s.cost.unwrap();
        assert_eq!(c.l, 100);
        assert!((c.step_t - 0.01).abs() < 1e-15);
        assert_eq!(c.time_cost, 1.0);
        assert_eq!(s.gate_count(), 100);
        assert_eq!(s.local_count(), 0);
    }

    #[test]
    fn heisenberg_chain_on_lattice() {
        let (j, gamma, tp, eps) = (0.5, 0.25, 1.0, 0.1);
        let hw = HardwareModel::Lattice(LatticeModel::chain(4, Boundary::Open, &[1]).unwrap().with_gamma(gamma));
        let mut terms = Vec::new();
        for a in 0..3 {
            for p in Pauli::AXES {
                terms.push(PauliString::pair(4, a, p, a + 1, p, j));
            }
        }
        let h = Hamiltonian::from_terms(4, terms).unwrap();
        let plan = plan_cycle(&h, &hw, &TrotterOptions::default()).unwrap();
        assert_eq!(plan.time_cost(), 3.0 * j / gamma);
        assert_eq!(plan.control_steps(), 3);
        assert!(plan.effective_hamiltonian().unwrap().approx_eq(&h, 1e-15));
        let cycle = plan.cycle_schedule(0.1);
        assert_eq!(cycle.local_count(), 3);
        assert_eq!(cycle.gate_count(), 3);
        let s = trotter_schedule(&h, tp, eps, &hw, &TrotterOptions::default()).unwrap();
        let c = s.cost.unwrap();
        assert!((c.chi - 9.0 * j * tp / (gamma * eps)).abs() < 1e-12 * c.chi);
    }

    #[test]
    fn lattice_rejects_random_couplings() {
        let hw = HardwareModel::Lattice(LatticeModel::chain(3, Boundary::Open, &[1]).unwrap());
        let h = Hamiltonian::from_labels(&[(0.3, "ZZI"), (0.7, "IZZ")]).unwrap();
        assert!(matches!(plan_cycle(&h, &hw, &TrotterOptions::default()), Err(Error::Hardware(_))));
        let h = Hamiltonian::from_labels(&[(0.3, "ZZI"), (0.3, "IZZ"), (0.1, "ZII")]).unwrap();
        assert!(matches!(plan_cycle(&h, &hw, &TrotterOptions::default()), Err(Error::Hardware(_))));
    }

    #[test]
    fn lattice_sign_gate() {
        let hw = HardwareModel::Lattice(LatticeModel::chain(2, Boundary::Open, &[1]).unwrap().with_gamma(-1.0));
        let h = Hamiltonian::from_labels(&[(1.0, "XX"), (1.0, "YY"), (1.0, "ZZ")]).unwrap();
        assert!(matches!(plan_cycle(&h, &hw, &TrotterOptions::default()), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn traps_slice_general_pairs() {
        let h = Hamiltonian::from_labels(&[(0.4, "ZY"), (-0.4, "YZ"), (0.2, "XX"), (-0.3, "ZZ"), (0.1, "XI")]).unwrap();
        for gamma in [1.0, -0.5] {
            let hw = HardwareModel::Traps(TrapArrayModel::chain(2).unwrap().with_gamma(gamma));
            let plan = plan_cycle(&h, &hw, &TrotterOptions::default()).unwrap();
            assert!(plan.effective_hamiltonian().unwrap().approx_eq(&h, 1e-15));
            for g in plan.gates() {
                assert_eq!(g.rate.signum(), gamma.signum());
            }
        }
    }

    #[test]
    fn empty_target_compiles_to_nothing() {
        let h = Hamiltonian::zero(3);
        let s = trotter_schedule(&h, 1.0, 0.01, &traps(3), &TrotterOptions::default()).unwrap();
        assert!(s.is_empty());
        let c = s.cost.unwrap();
        assert_eq!((c.time_cost, c.l, c.chi), (0.0, 0, 0.0));
    }

    #[test]
    fn fields_only_use_one_layer() {
        let h = Hamiltonian::from_labels(&[(0.5, "XI"), (0.2, "IZ")]).unwrap();
        let s = trotter_schedule(&h, 2.0, 0.01, &traps(2), &TrotterOptions::default()).unwrap();
        assert_eq!(s.cost.unwrap().l, 1);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn frequency_counts_follow_couplings() {
        let h = Hamiltonian::from_labels(&[(0.3, "ZZII"), (-0.6, "IZZI"), (0.9, "IIZZ")]).unwrap();
        let opts = TrotterOptions { pairs: PairRealization::Frequency { unit_angle: 0.01 } };
        let s = trotter_schedule(&h, 1.0, 0.01, &traps(4), &opts).unwrap();
        let count = |a: usize| s.gates().filter(|g| g.terms[0].a == a).count() as f64;
        assert!((count(0) - 30.0).abs() <= 1.0);
        assert!((count(1) - 60.0).abs() <= 1.0);
        assert!((count(2) - 90.0).abs() <= 1.0);
    }
}
