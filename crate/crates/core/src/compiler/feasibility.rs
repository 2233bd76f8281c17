
use crate::pauli::CoeffMatrix;
use crate::{Error, Result};

/// Max `|M_ij - M_ji|` accepted as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Relative threshold below which an eigenvalue counts as vanishing.
const VANISHING_REL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    /// `(sum mu_i) / gamma` when feasible.
    pub time_cost: Option<f64>,
    pub eigenvalues: [f64; 3],
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma == 0.0 || !gamma.is_finite() {
        Err(Error::ZeroCoupling)
    } else {
        Ok(())
    }
}

/// Can `M` be simulated from `gamma Z (x) Z` with homogeneous local control?
/// Every non-vanishing eigenvalue of `M` must share the sign of `gamma`.
pub fn homogeneous_feasibility(m: &CoeffMatrix, gamma: f64) -> Result<Feasibility> {
    check_gamma(gamma)?;
    let asym = m.asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::Asymmetric(asym));
    }
    let eigenvalues = m.symmetric_eigenvalues();
    let scale = eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let feasible = eigenvalues
        .iter()
        .filter(|mu| mu.abs() > VANISHING_REL * scale)
        .all(|mu| mu.signum() == gamma.signum());
    let time_cost = if feasible { Some(eigenvalues.iter().sum::<f64>() / gamma) } else { None };
    Ok(Feasibility { feasible, time_cost, eigenvalues })
}

/// Optimal time cost with independent control of both qubits:
/// `(sum of singular values of M) / |gamma|`.
pub fn inhomogeneous_cost(m: &CoeffMatrix, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    if m.0.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(m.singular_values().iter().sum::<f64>() / gamma.abs())
}
