//! Average-Hamiltonian compilation: control sequences and their effective
//! Hamiltonians, feasibility and cost formulas, the protocol library,
//! Trotter scheduling, the commutator (three-body) gate, the decoupling echo
//! and magnetic-field layers.

mod feasibility;
mod field;
mod schedule;
mod sequence;
mod synthesis;
mod three_body;
mod trotter;

pub use feasibility::{homogeneous_feasibility, inhomogeneous_cost, Feasibility, SYMMETRY_TOL};
pub use field::{magnetic_field_layer, magnetic_field_layer_per_site};
pub use schedule::{Axis, GateId, Instruction, PulseSchedule, RawGate, ZzTerm};
pub(crate) use schedule::check_pair;
pub use sequence::{effective_hamiltonian, layer_matrix, protocol_library, ControlSequence, PROTOCOLS, WEIGHT_SUM_TOL};
pub use synthesis::{synthesize_diagonal, DiagonalSynthesis};
pub use three_body::{decoupling_echo, echo_ideal_generator, three_body_gate, Evolution, GateSequence, SequenceStep, ThreeBodyGate};
pub use trotter::{
    plan_cycle, trotter_schedule, Block, BlockStep, CostReport, CyclePlan, PairRealization, PlannedGate,
    TrotterOptions,
};
