#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use super::interpolate;
use crate::compiler::{plan_cycle, CyclePlan, TrotterOptions};
use crate::dense;
use crate::hardware::HardwareModel;
use crate::pauli::Hamiltonian;
use crate::sim::{run_schedule, run_schedule_with, ErrorModel, GroundSpace, SpectrumCache, StateVector, DEFAULT_DEGENERACY_TOL};
use crate::{Error, Result, DEFAULT_DENSE_CAP};

/// Interpolation parameter `k` as a function of the step index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Ramp {
    /// `k_s = 1 - s / steps`.
    #[default]
    Linear,
    /// `k_s = (1 + cos(pi s / steps)) / 2`.
    Cosine,
}

impl Ramp {
    pub fn k(self, step: usize, steps: usize) -> f64 {
        let x = step as f64 / steps as f64;
        match self {
            Ramp::Linear => 1.0 - x,
            Ramp::Cosine => 0.5 * (1.0 + (core::f64::consts::PI * x).cos()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ramp::Linear => "linear",
            Ramp::Cosine => "cosine",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Ramp::Linear, Ramp::Cosine].into_iter().find(|r| r.name() == name)
    }
}

/// How each step advances the state.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Stepping {
    /// One compiled Trotter cycle of `H(k_s)`.
    #[default]
    Trotter,
    /// `exp(-i H(k_s) dt_s)` from the dense oracle.
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdiabaticConfig {
    pub h_initial: Hamiltonian,
    pub h_target: Hamiltonian,
    pub steps: usize,
    /// Largest raw-gate angle of a step; `dt_s = theta1 / max |two-body coefficient of H(k_s)|`.
    pub theta1: f64,
    pub ramp: Ramp,
    pub stepping: Stepping,
    pub error_model: Option<ErrorModel>,
    /// Trajectory stride; the last step is always recorded.
    pub record_every: usize,
    pub dense_cap: usize,
}

impl AdiabaticConfig {
    pub fn new(h_initial: Hamiltonian, h_target: Hamiltonian, steps: usize, theta1: f64) -> Self {
        AdiabaticConfig {
            h_initial,
            h_target,
            steps,
            theta1,
            ramp: Ramp::Linear,
            stepping: Stepping::Trotter,
            error_model: None,
            record_every: 1,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h_initial.n_qubits() != self.h_target.n_qubits() {
            return Err(Error::LengthMismatch { expected: self.h_target.n_qubits(), found: self.h_initial.n_qubits() });
        }
        if self.steps == 0 {
            return Err(Error::InvalidArgument("at least one step is needed".into()));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidArgument("record stride must be positive".into()));
        }
        if !(self.theta1 > 0.0 && self.theta1.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!("theta1 = {} must be positive", self.theta1)));
        }
        if let Some(e) = &self.error_model {
            e.validate()?;
            if self.stepping == Stepping::Exact {
                return Err(Error::InvalidArgument("exact stepping has no timing errors".into()));
            }
        }
        dense::check_cap(self.h_target.n_qubits(), self.dense_cap)
    }

    fn records(&self, step: usize) -> bool {
        step.is_multiple_of(self.record_every) || step == self.steps
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub k: f64,
    /// Simulated time after the step.
    pub time: f64,
    /// Weight in the ground space of `H(k)`.
    pub fidelity: f64,
    /// `<H(k)>`.
    pub energy: f64,
}

#[derive(Clone, Debug)]
pub struct AdiabaticResult {
    pub trajectory: Vec<TrajectoryPoint>,
    /// `(E_j, weight)` over the target eigenspaces, ascending energy.
    pub histogram: Vec<(f64, f64)>,
    pub final_state: StateVector,
    pub simulated_time: f64,
}

impl AdiabaticResult {
    /// Weight of the lowest target eigenspace.
    pub fn ground_weight(&self) -> f64 {
        self.histogram.first().map_or(0.0, |h| h.1)
    }
}

struct PathStep {
    k: f64,
    dt: f64,
    hamiltonian: Hamiltonian,
    plan: Option<CyclePlan>,
    ground: Option<GroundSpace>,
}

/// Everything about a run that does not depend on the error draws, so that
/// repetitions share one set of plans and spectra.
pub struct AdiabaticPath {
    config: AdiabaticConfig,
    initial: StateVector,
    target: SpectrumCache,
    steps: Vec<PathStep>,
}

fn step_scale(h: &Hamiltonian) -> f64 {
    let two = h.max_two_body_coeff();
    if two > 0.0 {
        two
    } else {
        h.terms().iter().filter(|t| !t.is_identity()).map(|t| t.coeff().abs()).fold(0.0, f64::max)
    }
}

impl AdiabaticPath {
    pub fn new(config: &AdiabaticConfig, hw: &HardwareModel) -> Result<Self> {
        config.validate()?;
        let n = config.h_target.n_qubits();
        let tol = DEFAULT_DEGENERACY_TOL;
        let initial = SpectrumCache::with_options(&config.h_initial, tol, config.dense_cap)?.ground_vector(n);
        let target = SpectrumCache::with_options(&config.h_target, tol, config.dense_cap)?;
        let mut steps = Vec::with_capacity(config.steps);
        for s in 1..=config.steps {
            let k = config.ramp.k(s, config.steps);
            let hamiltonian = interpolate(&config.h_initial, &config.h_target, k)?;
            let scale = step_scale(&hamiltonian);
            if scale == 0.0 {
                return Err(Error::InvalidArgument(alloc::format!("H(k) vanishes at step {s}")));
            }
            let plan = match config.stepping {
                Stepping::Trotter => Some(plan_cycle(&hamiltonian, hw, &TrotterOptions::default())?),
                Stepping::Exact => None,
            };
            let ground = match (config.stepping, config.records(s)) {
                (Stepping::Trotter, true) => {
                    Some(SpectrumCache::with_options(&hamiltonian, tol, config.dense_cap)?.ground_space())
                }
                _ => None,
            };
            steps.push(PathStep { k, dt: config.theta1 / scale, hamiltonian, plan, ground });
        }
        Ok(AdiabaticPath { config: config.clone(), initial, target, steps })
    }

    pub fn config(&self) -> &AdiabaticConfig {
        &self.config
    }

    pub fn initial_state(&self) -> &StateVector {
        &self.initial
    }

    /// Target spectrum used for the final histogram.
    pub fn target_spectrum(&self) -> &SpectrumCache {
        &self.target
    }

    /// Total simulated time `sum_s dt_s`.
    pub fn simulated_time(&self) -> f64 {
        self.steps.iter().map(|s| s.dt).sum()
    }

    /// Runs the path. One draw stream covers the whole run.
    pub fn run(&self, error: Option<&ErrorModel>) -> Result<AdiabaticResult> {
        if error.is_some() && self.config.stepping == Stepping::Exact {
            return Err(Error::InvalidArgument("exact stepping has no timing errors".into()));
        }
        let mut state = self.initial.clone();
        let mut source = error.map(|e| e.source());
        let mut trajectory = Vec::new();
        let mut time = 0.0;
        for (i, step) in self.steps.iter().enumerate() {
            let s = i + 1;
            let mut spectrum = None;
            match &step.plan {
                Some(plan) => {
                    let schedule = plan.cycle_schedule(step.dt);
                    match (error, source.as_mut()) {
                        (Some(e), Some(src)) => run_schedule_with(&mut state, &schedule, e, src)?,
                        _ => {
                            run_schedule(&mut state, &schedule, None)?;
                        }
                    }
                }
                None => {
                    let cache = SpectrumCache::with_options(&step.hamiltonian, DEFAULT_DEGENERACY_TOL, self.config.dense_cap)?;
                    state = cache.evolve(&state, step.dt)?;
                    spectrum = Some(cache);
                }
            }
            time += step.dt;
            if self.config.records(s) {
                let fidelity = match (&step.ground, &spectrum) {
                    (Some(g), _) => g.weight(&state)?,
                    (None, Some(c)) => c.ground_weight(&state)?,
                    (None, None) => unreachable!("recorded steps carry a ground space"),
                };
                trajectory.push(TrajectoryPoint { step: s, k: step.k, time, fidelity, energy: energy(&step.hamiltonian, &state) });
            }
        }
        let histogram = self.target.histogram(&state)?;
        Ok(AdiabaticResult { trajectory, histogram, final_state: state, simulated_time: time })
    }
}

fn energy(h: &Hamiltonian, state: &StateVector) -> f64 {
    let hpsi = dense::apply_hamiltonian(h, state.amplitudes());
    state.amplitudes().iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Builds the path for `config` and runs it with `config.error_model`.
pub fn adiabatic_run(config: &AdiabaticConfig, hw: &HardwareModel) -> Result<AdiabaticResult> {
    AdiabaticPath::new(config, hw)?.run(config.error_model.as_ref())
}
