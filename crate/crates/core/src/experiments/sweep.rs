#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use super::{AdiabaticConfig, AdiabaticPath};
use crate::hardware::HardwareModel;
use crate::sim::ErrorModel;
use crate::{Error, Result};

/// One cell of the sweep grid. The seed depends on the step count and the
/// repetition only, so every `eta` of a repetition shares its draws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepJob {
    pub eta_index: usize,
    pub steps_index: usize,
    pub repetition: usize,
    pub eta: f64,
    pub steps: usize,
    pub seed: u64,
}

impl SweepJob {
    /// Same jitter amplitude on local pulses and interaction times.
    pub fn error_model(&self, crosstalk: bool) -> Result<ErrorModel> {
        Ok(ErrorModel::new(self.eta, self.eta, self.seed)?.with_crosstalk(crosstalk))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub eta: f64,
    pub steps: usize,
    pub repetitions: usize,
    /// Mean final ground-space weight.
    pub mean: f64,
    /// Sample standard deviation.
    pub std_dev: f64,
    /// `std_dev / sqrt(repetitions)`.
    pub std_err: f64,
    pub min: f64,
    pub max: f64,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of repetition `rep` at `steps`.
pub fn derive_seed(base: u64, steps: usize, rep: usize) -> u64 {
    mix(mix(mix(base) ^ steps as u64) ^ rep as u64)
}

/// Full factorial grid in the order steps, eta, repetition.
pub fn sweep_jobs(etas: &[f64], steps_list: &[usize], repetitions: usize, base_seed: u64) -> Result<Vec<SweepJob>> {
    if etas.is_empty() || steps_list.is_empty() || repetitions == 0 {
        return Err(Error::InvalidArgument("sweep grid is empty".into()));
    }
    for &eta in etas {
        ErrorModel::new(eta, eta, 0)?;
    }
    if steps_list.contains(&0) {
        return Err(Error::InvalidArgument("step counts must be positive".into()));
    }
    let mut jobs = Vec::with_capacity(etas.len() * steps_list.len() * repetitions);
    for (steps_index, &steps) in steps_list.iter().enumerate() {
        for (eta_index, &eta) in etas.iter().enumerate() {
            for repetition in 0..repetitions {
                let seed = derive_seed(base_seed, steps, repetition);
                jobs.push(SweepJob { eta_index, steps_index, repetition, eta, steps, seed });
            }
        }
    }
    Ok(jobs)
}

/// Aggregates per-job weights (same order as `jobs`) into one row per
/// `(steps, eta)` cell, in grid order.
pub fn summarize(jobs: &[SweepJob], weights: &[f64]) -> Result<Vec<SweepRow>> {
    if jobs.len() != weights.len() {
        return Err(Error::LengthMismatch { expected: jobs.len(), found: weights.len() });
    }
    let mut rows = Vec::new();
    let mut i = 0;
    while i < jobs.len() {
        let cell = (jobs[i].steps_index, jobs[i].eta_index);
        let mut j = i;
        while j < jobs.len() && (jobs[j].steps_index, jobs[j].eta_index) == cell {
            j += 1;
        }
        rows.push(stats(jobs[i].eta, jobs[i].steps, &weights[i..j]));
        i = j;
    }
    Ok(rows)
}

fn stats(eta: f64, steps: usize, w: &[f64]) -> SweepRow {
    let n = w.len() as f64;
    let mean = w.iter().sum::<f64>() / n;
    let var = if w.len() > 1 { w.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    let std_dev = var.sqrt();
    SweepRow {
        eta,
        steps,
        repetitions: w.len(),
        mean,
        std_dev,
        std_err: std_dev / n.sqrt(),
        min: w.iter().copied().fold(f64::INFINITY, f64::min),
        max: w.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Final ground-space weight for every `(steps, eta, repetition)`.
///
/// `config.error_model` supplies the base seed and the crosstalk switch;
/// its amplitudes are replaced by each grid value.
pub fn error_sweep(
    config: &AdiabaticConfig,
    hw: &HardwareModel,
    etas: &[f64],
    steps_list: &[usize],
    repetitions: usize,
) -> Result<Vec<SweepRow>> {
    let base = config.error_model.ok_or(Error::MissingSeed)?;
    let jobs = sweep_jobs(etas, steps_list, repetitions, base.seed)?;
    let mut weights = Vec::with_capacity(jobs.len());
    let mut path: Option<AdiabaticPath> = None;
    for job in &jobs {
        if path.as_ref().is_none_or(|p| p.config().steps != job.steps) {
            let cfg = AdiabaticConfig { steps: job.steps, record_every: job.steps, error_model: None, ..config.clone() };
            path = Some(AdiabaticPath::new(&cfg, hw)?);
        }
        let p = path.as_ref().expect("path built above");
        weights.push(p.run(Some(&job.error_model(base.crosstalk)?))?.ground_weight());
    }
    summarize(&jobs, &weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{build_model, Geometry, ModelKind, NamedModel};
    use crate::hardware::TrapArrayModel;
    use crate::pauli::{Hamiltonian, Pauli, PauliString};

    #[test]
    fn grid_shape() {
        let jobs = sweep_jobs(&[0.0, 0.01, 0.02, 0.03, 0.04], &[100, 250, 500, 1500], 3, 9).unwrap();
        assert_eq!(jobs.len(), 60);
        let rows = summarize(&jobs, &alloc::vec![0.5; 60]).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.repetitions == 3 && r.std_dev == 0.0 && r.mean == 0.5));
        assert_eq!(jobs[0].seed, jobs[3].seed);
        assert_ne!(jobs[0].seed, jobs[1].seed);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(sweep_jobs(&[], &[1], 1, 0).is_err());
        assert!(sweep_jobs(&[1.5], &[1], 1, 0).is_err());
        assert!(sweep_jobs(&[0.1], &[0], 1, 0).is_err());
    }

    #[test]
    fn stats_of_known_sample() {
        let r = stats(0.0, 1, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(r.mean, 2.5);
        assert!((r.std_dev - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((r.std_err - r.std_dev / 2.0).abs() < 1e-15);
        assert_eq!((r.min, r.max), (1.0, 4.0));
    }

    #[test]
    fn zero_eta_column_is_deterministic() {
        let n = 4;
        let h0 = Hamiltonian::from_terms(n, (0..n - 1).map(|a| PauliString::pair(n, a, Pauli::Z, a + 1, Pauli::Z, 1.0))).unwrap();
        let hd = build_model(&NamedModel::new(ModelKind::Dipole, 1.0, Geometry::chain(n))).unwrap();
        let hw = HardwareModel::Traps(TrapArrayModel::chain(n).unwrap());
        let mut cfg = AdiabaticConfig::new(h0, hd, 30, 0.1);
        cfg.error_model = Some(ErrorModel::new(0.0, 0.0, 11).unwrap());
        let rows = error_sweep(&cfg, &hw, &[0.0, 0.04], &[30], 4).unwrap();
        cfg.error_model = None;
        let clean = super::super::adiabatic_run(&cfg, &hw).unwrap().ground_weight();
        assert_eq!(rows[0].mean, clean);
        assert_eq!(rows[0].std_dev, 0.0);
        assert!(rows[1].std_dev > 0.0);
        cfg.error_model = None;
        assert_eq!(error_sweep(&cfg, &hw, &[0.0], &[30], 1).unwrap_err(), Error::MissingSeed);
    }
}
