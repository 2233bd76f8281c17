#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use crate::compiler::ZzTerm;
use crate::pauli::{Hamiltonian, Pauli, PauliString};
use crate::{Error, Result};

/// Parasitic/intended ratio below which groups are pushed concurrently.
pub const DEFAULT_CROSSTALK_THRESHOLD: f64 = 1e-3;

const MIN_SPACING_TOL: f64 = 1e-9;

/// Ions in individual micro-traps, positions in units of the spacing `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrapArrayModel {
    pub positions: Vec<[f64; 2]>,
    /// Dimensionless coupling of the pulse-overlap integral.
    pub kappa: f64,
    pub crosstalk_threshold: f64,
    pub gamma: f64,
}

impl TrapArrayModel {
    pub fn new(positions: Vec<[f64; 2]>) -> Result<Self> {
        let m = TrapArrayModel { positions, kappa: 1.0, crosstalk_threshold: DEFAULT_CROSSTALK_THRESHOLD, gamma: 1.0 };
        m.validate()?;
        Ok(m)
    }

    /// Unit-spaced linear chain.
    pub fn chain(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| [i as f64, 0.0]).collect())
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.crosstalk_threshold = threshold;
        self
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.positions.is_empty() {
            return Err(Error::InvalidGeometry("no ions".into()));
        }
        if self.positions.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.gamma == 0.0 || !self.gamma.is_finite() {
            return Err(Error::ZeroCoupling);
        }
        if !(self.kappa.is_finite() && self.crosstalk_threshold.is_finite() && self.crosstalk_threshold >= 0.0) {
            return Err(Error::InvalidGeometry("kappa and threshold must be finite".into()));
        }
        for a in 0..self.positions.len() {
            for b in a + 1..self.positions.len() {
                let d = self.distance(a, b);
                if d < 1.0 - MIN_SPACING_TOL {
                    return Err(Error::InvalidGeometry(alloc::format!(
                        "ions {a} and {b} are {d} apart (minimum spacing is 1)"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n_ions(&self) -> usize {
        self.positions.len()
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        let (p, q) = (self.positions[a], self.positions[b]);
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
    }

    /// `d_ab^{-3}`.
    pub fn coupling(&self, a: usize, b: usize) -> f64 {
        self.distance(a, b).powi(-3)
    }

    /// Terms `d_ab^{-3} Z_a Z_b` over all pairs of `pushed`.
    pub fn push_terms(&self, pushed: &[usize]) -> Result<Vec<ZzTerm>> {
        check_ions(self, pushed)?;
        let mut sorted = pushed.to_vec();
        sorted.sort_unstable();
        let mut terms = Vec::new();
        for (i, &a) in sorted.iter().enumerate() {
            for &b in &sorted[i + 1..] {
                terms.push(ZzTerm::new(a, b, self.coupling(a, b)));
            }
        }
        Ok(terms)
    }
}

fn check_ions(model: &TrapArrayModel, ions: &[usize]) -> Result<()> {
    let n_qubits = model.n_ions();
    for (i, &a) in ions.iter().enumerate() {
        if a >= n_qubits {
            return Err(Error::QubitOutOfRange { index: a, n_qubits });
        }
        if ions[..i].contains(&a) {
            return Err(Error::SameQubit(a));
        }
    }
    Ok(())
}

/// Generator `theta_base sum_{a<b in pushed} d_ab^{-3} Z_a Z_b` of one push,
/// parasitic pairs included.
pub fn uqs2_push(model: &TrapArrayModel, pushed: &[usize], theta_base: f64) -> Result<Hamiltonian> {
    if pushed.len() < 2 {
        return Err(Error::TooFewIons);
    }
    let n = model.n_ions();
    let terms = model.push_terms(pushed)?;
    Hamiltonian::from_terms(
        n,
        terms.iter().map(|t| PauliString::pair(n, t.a, Pauli::Z, t.b, Pauli::Z, theta_base * t.weight)),
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupPairing {
    pub first: usize,
    pub second: usize,
    /// Strongest cross-group coupling over the weakest intended coupling.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrosstalkReport {
    pub pairings: Vec<GroupPairing>,
    pub max_ratio: f64,
    pub threshold: f64,
    pub concurrent: bool,
}

/// Cross-group crosstalk of simultaneously pushed groups.
pub fn crosstalk_report(model: &TrapArrayModel, groups: &[Vec<usize>]) -> Result<CrosstalkReport> {
    let mut seen = Vec::new();
    for g in groups {
        if g.len() < 2 {
            return Err(Error::TooFewIons);
        }
        check_ions(model, g)?;
        if let Some(&ion) = g.iter().find(|a| seen.contains(*a)) {
            return Err(Error::OverlappingGroups(ion));
        }
        seen.extend_from_slice(g);
    }
    let intended: Vec<f64> = groups
        .iter()
        .map(|g| {
            let mut weakest = f64::INFINITY;
            for (i, &a) in g.iter().enumerate() {
                for &b in &g[i + 1..] {
                    weakest = weakest.min(model.coupling(a, b));
                }
            }
            weakest
        })
        .collect();
    let mut pairings = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let mut strongest: f64 = 0.0;
            for &a in &groups[i] {
                for &b in &groups[j] {
                    strongest = strongest.max(model.coupling(a, b));
                }
            }
            pairings.push(GroupPairing { first: i, second: j, ratio: strongest / intended[i].min(intended[j]) });
        }
    }
    let max_ratio = pairings.iter().fold(0.0, |m: f64, p| m.max(p.ratio));
    Ok(CrosstalkReport {
        pairings,
        max_ratio,
        threshold: model.crosstalk_threshold,
        concurrent: max_ratio <= model.crosstalk_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_push_follows_cube_law() {
        let m = TrapArrayModel::chain(4).unwrap();
        let h = uqs2_push(&m, &[0, 1, 2, 3], 1.0).unwrap();
        assert_eq!(h.coefficient_of("ZZII"), 1.0);
        assert_eq!(h.coefficient_of("ZIZI"), 1.0 / 8.0);
        assert_eq!(h.coefficient_of("ZIIZ"), 1.0 / 27.0);
        assert_eq!(h.len(), 6);
    }

    #[test]
    fn two_ions_give_a_single_term() {
        let m = TrapArrayModel::chain(3).unwrap();
        let h = uqs2_push(&m, &[2, 1], 0.4).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coefficient_of("IZZ"), 0.4);
        assert_eq!(uqs2_push(&m, &[1], 0.4), Err(Error::TooFewIons));
        assert_eq!(uqs2_push(&m, &[1, 1], 0.4), Err(Error::SameQubit(1)));
    }

    #[test]
    fn crosstalk_at_ten_sites() {
        let m = TrapArrayModel::chain(13).unwrap().with_threshold(2e-3);
        let r = crosstalk_report(&m, &[alloc::vec![0, 1], alloc::vec![11, 12]]).unwrap();
        assert!((r.max_ratio - 1e-3).abs() <= 1e-15 * 1e-3);
        assert!(r.concurrent);
    }

    #[test]
    fn adjacent_pairs_are_serialized() {
        let m = TrapArrayModel::chain(5).unwrap();
        let r = crosstalk_report(&m, &[alloc::vec![0, 1], alloc::vec![3, 4]]).unwrap();
        assert!((r.max_ratio - 1.0 / 8.0).abs() < 1e-15);
        assert!(!r.concurrent);
        let r = crosstalk_report(&m, &[alloc::vec![0, 1], alloc::vec![2, 3]]).unwrap();
        assert_eq!(r.max_ratio, 1.0);
    }

    #[test]
    fn single_group_is_concurrent() {
        let m = TrapArrayModel::chain(3).unwrap();
        let r = crosstalk_report(&m, &[alloc::vec![0, 1]]).unwrap();
        assert_eq!(r.max_ratio, 0.0);
        assert!(r.concurrent);
    }

    #[test]
    fn overlapping_groups_are_rejected() {
        let m = TrapArrayModel::chain(4).unwrap();
        assert_eq!(
            crosstalk_report(&m, &[alloc::vec![0, 1], alloc::vec![1, 2]]),
            Err(Error::OverlappingGroups(1))
        );
    }

    #[test]
    fn ions_closer_than_one_spacing() {
        assert!(matches!(TrapArrayModel::new(alloc::vec![[0.0, 0.0], [0.5, 0.0]]), Err(Error::InvalidGeometry(_))));
    }
}
