use alloc::vec::Vec;
use core::ops::Range;
#[allow(unused_imports)]
use num_traits::Float;

use super::StateVector;
use crate::dense::{self, CMatrix, Eigen};
use crate::pauli::Hamiltonian;
use crate::{Error, Result, C64, DEFAULT_DENSE_CAP};

/// Eigenvalues closer than this (chained) form one degenerate group.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

/// Dense eigendecomposition with degeneracy groups.
#[derive(Clone, Debug)]
pub struct SpectrumCache {
    eigen: Eigen,
    groups: Vec<Range<usize>>,
    tol: f64,
}

impl SpectrumCache {
    pub fn new(h: &Hamiltonian) -> Result<Self> {
        Self::with_options(h, DEFAULT_DEGENERACY_TOL, DEFAULT_DENSE_CAP)
    }

    pub fn with_options(h: &Hamiltonian, tol: f64, cap: usize) -> Result<Self> {
        dense::check_cap(h.n_qubits(), cap)?;
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!("degeneracy tolerance {tol} must be positive")));
        }
        let eigen = dense::eigh(h);
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=eigen.values.len() {
            if i == eigen.values.len() || eigen.values[i] - eigen.values[i - 1] >= tol {
                groups.push(start..i);
                start = i;
            }
        }
        Ok(SpectrumCache { eigen, groups, tol })
    }

    pub fn values(&self) -> &[f64] {
        &self.eigen.values
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.eigen.vectors
    }

    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Mean eigenvalue of each group.
    pub fn group_energies(&self) -> Vec<f64> {
        self.groups
            .iter()
            .map(|g| self.eigen.values[g.clone()].iter().sum::<f64>() / g.len() as f64)
            .collect()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigen.values[0]
    }

    pub fn degeneracy(&self) -> usize {
        self.groups[0].len()
    }

    /// `E_1 - E_0` between the two lowest groups, if there are two.
    pub fn gap(&self) -> Option<f64> {
        let next = self.groups.get(1)?;
        Some(self.eigen.values[next.start] - self.eigen.values[self.groups[0].end - 1])
    }

    fn check_state(&self, state: &StateVector) -> Result<()> {
        if state.dim() != self.eigen.values.len() {
            return Err(Error::LengthMismatch { expected: self.eigen.values.len(), found: state.dim() });
        }
        Ok(())
    }

    /// `<v_i|psi>` for every eigenvector.
    fn overlaps(&self, state: &StateVector) -> Vec<C64> {
        let v = dense::CVector::from_column_slice(state.amplitudes());
        self.eigen.vectors.ad_mul(&v).iter().copied().collect()
    }

    /// `||P_j psi||^2` per group, in ascending energy.
    pub fn histogram(&self, state: &StateVector) -> Result<Vec<(f64, f64)>> {
        self.check_state(state)?;
        let c = self.overlaps(state);
        Ok(self
            .groups
            .iter()
            .zip(self.group_energies())
            .map(|(g, e)| (e, c[g.clone()].iter().map(|x| x.norm_sqr()).sum()))
            .collect())
    }

    /// `||P_0 psi||^2` onto the ground group.
    pub fn ground_weight(&self, state: &StateVector) -> Result<f64> {
        self.check_state(state)?;
        let g = self.groups[0].clone();
        let mut w = 0.0;
        for i in g {
            let col = self.eigen.vectors.column(i);
            let c: C64 = col.iter().zip(state.amplitudes()).map(|(v, a)| v.conj() * a).sum();
            w += c.norm_sqr();
        }
        Ok(w.min(1.0))
    }

    /// Orthonormal basis of the ground group, detached from the cache.
    pub fn ground_space(&self) -> GroundSpace {
        let g = self.groups[0].clone();
        GroundSpace {
            energy: self.ground_energy(),
            basis: g.map(|i| self.eigen.vectors.column(i).iter().copied().collect()).collect(),
        }
    }

    /// Deterministic ground vector: `P_0 |k*>` normalized, with `k*` the
    /// first basis index maximizing `||P_0 |k>||`. Its amplitude at `k*` is
    /// real and positive.
    pub fn ground_vector(&self, n_qubits: usize) -> StateVector {
        let g = self.groups[0].clone();
        let dim = self.eigen.values.len();
        let weights: Vec<f64> = (0..dim)
            .map(|k| g.clone().map(|i| self.eigen.vectors[(k, i)].norm_sqr()).sum())
            .collect();
        let best = weights.iter().fold(0.0, |m: f64, w| m.max(*w));
        let k_star = weights.iter().position(|w| *w >= best - 1e-12).unwrap_or(0);
        let mut amps = alloc::vec![C64::new(0.0, 0.0); dim];
        for i in g {
            let coeff = self.eigen.vectors[(k_star, i)].conj();
            for (k, a) in amps.iter_mut().enumerate() {
                *a += self.eigen.vectors[(k, i)] * coeff;
            }
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_raw(n_qubits, amps)
    }

    /// `exp(-i H t) psi`.
    pub fn evolve(&self, state: &StateVector, t: f64) -> Result<StateVector> {
        self.check_state(state)?;
        Ok(StateVector::from_raw(state.n_qubits(), self.eigen.evolve_vector(t, state.amplitudes())))
    }

    /// Max deviation of `V^† V` from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let v = &self.eigen.vectors;
        let g = v.ad_mul(v);
        let id = CMatrix::identity(v.ncols(), v.ncols());
        dense::max_entry_distance(&g, &id)
    }
}

/// Ground eigenspace as a list of orthonormal vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundSpace {
    pub energy: f64,
    pub basis: Vec<Vec<C64>>,
}

impl GroundSpace {
    pub fn degeneracy(&self) -> usize {
        self.basis.len()
    }

    /// `||P_0 psi||^2`.
    pub fn weight(&self, state: &StateVector) -> Result<f64> {
        let dim = self.basis.first().map_or(0, Vec::len);
        if state.dim() != dim {
            return Err(Error::LengthMismatch { expected: dim, found: state.dim() });
        }
        let w: f64 = self
            .basis
            .iter()
            .map(|v| v.iter().zip(state.amplitudes()).map(|(x, a)| x.conj() * a).sum::<C64>().norm_sqr())
            .sum();
        Ok(w.min(1.0))
    }
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: StateVector,
    pub degeneracy: usize,
}

pub fn ground_state(h: &Hamiltonian) -> Result<GroundState> {
    let cache = SpectrumCache::new(h)?;
    Ok(GroundState { energy: cache.ground_energy(), state: cache.ground_vector(h.n_qubits()), degeneracy: cache.degeneracy() })
}

/// `exp(-i h t) psi` through the dense eigendecomposition.
pub fn exact_evolve(h: &Hamiltonian, t: f64, state: &StateVector) -> Result<StateVector> {
    exact_evolve_capped(h, t, state, DEFAULT_DENSE_CAP)
}

pub fn exact_evolve_capped(h: &Hamiltonian, t: f64, state: &StateVector, cap: usize) -> Result<StateVector> {
    dense::check_cap(h.n_qubits(), cap)?;
    if h.n_qubits() != state.n_qubits() {
        return Err(Error::LengthMismatch { expected: h.n_qubits(), found: state.n_qubits() });
    }
    let eig = dense::eigh(h);
    Ok(StateVector::from_raw(state.n_qubits(), eig.evolve_vector(t, state.amplitudes())))
}

/// Weights of `state` in the eigenspaces of `h`.
pub fn eigenspace_histogram(state: &StateVector, h: &Hamiltonian, tol: f64) -> Result<Vec<(f64, f64)>> {
    SpectrumCache::with_options(h, tol, DEFAULT_DENSE_CAP)?.histogram(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::fidelity;
    use core::f64::consts::FRAC_PI_2;

    fn heisenberg(j: f64) -> Hamiltonian {
        Hamiltonian::from_labels(&[(j, "XX"), (j, "YY"), (j, "ZZ")]).unwrap()
    }

    fn singlet() -> StateVector {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        StateVector::from_amplitudes(2, alloc::vec![
            C64::new(0.0, 0.0), C64::new(r, 0.0), C64::new(-r, 0.0), C64::new(0.0, 0.0)
        ])
        .unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let s = singlet();
        let out = exact_evolve(&heisenberg(0.7), 0.0, &s).unwrap();
        assert!((fidelity(&s, &out).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_z_quarter_period() {
        let h = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
        let s = StateVector::normalized(1, alloc::vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let out = exact_evolve(&h, FRAC_PI_2, &s).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0] - C64::new(0.0, -r)).norm() < 1e-14);
        assert!((out.amplitudes()[1] - C64::new(0.0, r)).norm() < 1e-14);
    }

    #[test]
    fn heisenberg_phases() {
        let j = 0.9;
        let s = singlet();
        let out = exact_evolve(&heisenberg(j), 1.0, &s).unwrap();
        let phase = s.inner(&out).unwrap();
        assert!((phase - C64::from_polar(1.0, 3.0 * j)).norm() < 1e-12);
        let t = StateVector::basis(2, 0).unwrap();
        let out = exact_evolve(&heisenberg(j), 1.0, &t).unwrap();
        assert!((t.inner(&out).unwrap() - C64::from_polar(1.0, -j)).norm() < 1e-12);
    }

    #[test]
    fn group_law() {
        let h = Hamiltonian::from_labels(&[(0.3, "XZI"), (-0.8, "IYY"), (0.5, "ZIX")]).unwrap();
        let s = StateVector::basis(3, 5).unwrap();
        let a = exact_evolve(&h, 0.4, &exact_evolve(&h, 0.9, &s).unwrap()).unwrap();
        let b = exact_evolve(&h, 1.3, &s).unwrap();
        let d = a.amplitudes().iter().zip(b.amplitudes()).fold(0.0, |m: f64, (x, y)| m.max((x - y).norm()));
        assert!(d < 1e-9);
    }

    #[test]
    fn field_ground_state() {
        let h = Hamiltonian::from_labels(&[(-1.0, "ZII"), (-1.0, "IZI"), (-1.0, "IIZ")]).unwrap();
        let g = ground_state(&h).unwrap();
        assert!((g.energy + 3.0).abs() < 1e-12);
        assert_eq!(g.degeneracy, 1);
        // Z|0> = |0>, so -Z favours |0>.
        assert!((g.state.amplitudes()[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn antialigned_ground_space() {
        let h = Hamiltonian::from_labels(&[(1.0, "ZZ")]).unwrap();
        let g = ground_state(&h).unwrap();
        assert!((g.energy + 1.0).abs() < 1e-12);
        assert_eq!(g.degeneracy, 2);
        // Tie-break picks |01> (index 1) with a real positive amplitude.
        assert!((g.state.amplitudes()[1] - C64::new(1.0, 0.0)).norm() < 1e-12);
        let cache = SpectrumCache::new(&h).unwrap();
        let sup = StateVector::normalized(2, alloc::vec![
            C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)
        ])
        .unwrap();
        assert!((cache.ground_weight(&sup).unwrap() - 1.0).abs() < 1e-12);
        let hist = cache.histogram(&sup).unwrap();
        assert_eq!(hist.len(), 2);
        assert!((hist[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_ground_state() {
        // -(J/2)(XX + YY + ZZ) with J > 0: triplet ground space, energy -J/2.
        let j = 1.2;
        let h = heisenberg(-j / 2.0);
        let g = ground_state(&h).unwrap();
        assert!((g.energy + j / 2.0).abs() < 1e-12);
        assert_eq!(g.degeneracy, 3);
        let cache = SpectrumCache::new(&h).unwrap();
        assert!((cache.ground_weight(&singlet()).unwrap()).abs() < 1e-12);
        assert!(cache.gram_deviation() < 1e-9);
        assert!((cache.gap().unwrap() - 2.0 * j).abs() < 1e-12);
    }

    #[test]
    fn histogram_sums_to_one() {
        let h = Hamiltonian::from_labels(&[(0.3, "XZI"), (-0.8, "IYY"), (0.5, "ZIX"), (1.0, "ZZZ")]).unwrap();
        let s = StateVector::normalized(3, (0..8).map(|k| C64::new(k as f64, 1.0)).collect()).unwrap();
        let hist = eigenspace_histogram(&s, &h, DEFAULT_DEGENERACY_TOL).unwrap();
        let total: f64 = hist.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(hist.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn cap_is_enforced() {
        let h = Hamiltonian::zero(3);
        assert!(matches!(SpectrumCache::with_options(&h, 1e-8, 2), Err(Error::CapExceeded { .. })));
    }
}
