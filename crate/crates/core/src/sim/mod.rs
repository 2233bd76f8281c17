//! Statevector execution with timing jitter, and the exact
//! eigendecomposition oracle.

mod apply;
mod noise;
mod observables;
mod run;
mod spectrum;
mod state;

pub use apply::{apply_local_layer, apply_raw_gate, apply_zz_gates};
pub use noise::{ErrorModel, NoiseSource, RNG_ALGORITHM};
pub use observables::{expectation, observables, Observable};
pub use run::{replay_schedule, run_schedule, run_schedule_with, ExecutionLog, LogEntry};
pub use spectrum::{
    eigenspace_histogram, exact_evolve, exact_evolve_capped, ground_state, GroundSpace, GroundState, SpectrumCache,
    DEFAULT_DEGENERACY_TOL,
};
pub use state::{fidelity, StateVector, NORM_TOL};
