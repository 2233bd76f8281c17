//! Named spin models, adiabatic ground-state preparation and error sweeps.

mod adiabatic;
mod gap;
mod model;
mod sweep;

pub use adiabatic::{adiabatic_run, AdiabaticConfig, AdiabaticPath, AdiabaticResult, Ramp, Stepping, TrajectoryPoint};
pub use gap::{interpolate, min_gap, min_gap_capped, GapScan};
pub use model::{
    build_model, protocol_for_model, protocol_for_model_with, Couplings, FieldSpec, Geometry, ModelKind, ModelProtocol,
    NamedModel, DEFAULT_UNIT_ANGLE,
};
pub use sweep::{derive_seed, error_sweep, summarize, sweep_jobs, SweepJob, SweepRow};
