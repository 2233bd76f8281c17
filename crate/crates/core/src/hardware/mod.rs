//! Platform models: the optical lattice (shift gates, global beams only) and
//! the micro-trap array (pairwise pushes with `1/d^3` crosstalk).

mod beam;
mod geometry;
mod lattice;
mod pulse;
mod realize;
mod trap;

pub use beam::{beam_compensation, beam_rotation_angles, gaussian_profile, BeamSolution, MAX_CONDITION};
pub use geometry::{geometry_remap, Pattern};
pub use lattice::{uqs1_gate, Boundary, LatticeGate, LatticeModel, LatticeShape};
pub use pulse::{theta_from_pulse, PulseProfile};
pub use realize::realize_schedule;
pub use trap::{crosstalk_report, uqs2_push, CrosstalkReport, GroupPairing, TrapArrayModel, DEFAULT_CROSSTALK_THRESHOLD};

use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum HardwareModel {
    Lattice(LatticeModel),
    Traps(TrapArrayModel),
}

impl HardwareModel {
    pub fn n_qubits(&self) -> usize {
        match self {
            HardwareModel::Lattice(m) => m.n_sites(),
            HardwareModel::Traps(m) => m.n_ions(),
        }
    }

    /// Raw coupling of the native `Z (x) Z` interaction.
    pub fn gamma(&self) -> f64 {
        match self {
            HardwareModel::Lattice(m) => m.gamma,
            HardwareModel::Traps(m) => m.gamma,
        }
    }

    /// Whether only global (homogeneous) local layers are available.
    pub fn homogeneous_only(&self) -> bool {
        matches!(self, HardwareModel::Lattice(_))
    }

    pub fn platform(&self) -> &'static str {
        match self {
            HardwareModel::Lattice(_) => "uqs1",
            HardwareModel::Traps(_) => "uqs2",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            HardwareModel::Lattice(m) => m.validate(),
            HardwareModel::Traps(m) => m.validate(),
        }
    }
}
