#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use super::Pauli;
use crate::{Error, Result, C64};

/// Max-entry tolerance on `U^† U - 1`.
pub const UNITARITY_TOL: f64 = 1e-12;

/// A 2x2 unitary, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitUnitary([[C64; 2]; 2]);

/// `U = e^{i phase} exp(-i angle (axis . sigma))` with `angle` in `[0, pi/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationParams {
    pub phase: f64,
    pub angle: f64,
    pub axis: [f64; 3],
}

impl SingleQubitUnitary {
    pub fn new(entries: [[C64; 2]; 2]) -> Result<Self> {
        let u = SingleQubitUnitary(entries);
        let deviation = u.unitarity_deviation();
        if !(deviation <= UNITARITY_TOL) {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(u)
    }

    pub(crate) fn new_unchecked(entries: [[C64; 2]; 2]) -> Self {
        SingleQubitUnitary(entries)
    }

    pub fn identity() -> Self {
        SingleQubitUnitary(Pauli::I.matrix())
    }

    pub fn pauli(p: Pauli) -> Self {
        SingleQubitUnitary(p.matrix())
    }

    /// `exp(-i angle (axis . sigma))`. The axis must be unit length within `1e-10`.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Result<Self> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if !((norm - 1.0).abs() <= 1e-10) {
            return Err(Error::NonUnitDirection(norm));
        }
        if !angle.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self::rotation_unchecked(axis, angle))
    }

    pub(crate) fn rotation_unchecked(axis: [f64; 3], angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let [nx, ny, nz] = axis;
        SingleQubitUnitary([
            [C64::new(c, -s * nz), C64::new(-s * ny, -s * nx)],
            [C64::new(s * ny, -s * nx), C64::new(c, s * nz)],
        ])
    }

    /// `(1 - i sigma_p) / sqrt 2 = exp(-i pi/4 sigma_p)`.
    pub fn quarter_turn(p: Pauli) -> Self {
        Self::signed_quarter_turn(p, false)
    }

    /// `(1 + i sigma_p) / sqrt 2 = exp(+i pi/4 sigma_p)`.
    pub fn quarter_turn_inverse(p: Pauli) -> Self {
        Self::signed_quarter_turn(p, true)
    }

    fn signed_quarter_turn(p: Pauli, plus: bool) -> Self {
        let m = p.matrix();
        let sign = if plus { 1.0 } else { -1.0 };
        let id = Pauli::I.matrix();
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = (id[r][c] + C64::new(0.0, sign) * m[r][c]) * FRAC_1_SQRT_2;
            }
        }
        SingleQubitUnitary(out)
    }

    pub fn entries(&self) -> &[[C64; 2]; 2] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        SingleQubitUnitary([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Matrix product `self * rhs` (`rhs` acts first).
    pub fn then_after(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        SingleQubitUnitary(out)
    }

    pub fn unitarity_deviation(&self) -> f64 {
        let g = self.adjoint().then_after(self);
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((g.0[r][c] - C64::new(target, 0.0)).norm());
            }
        }
        if worst.is_nan() {
            f64::INFINITY
        } else {
            worst
        }
    }

    /// Max-entry distance to the identity.
    pub fn distance_to_identity(&self) -> f64 {
        let id = Pauli::I.matrix();
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - id[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_identity(&self) -> bool {
        self.distance_to_identity() <= UNITARITY_TOL
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (0..2).all(|r| (0..2).all(|c| (self.0[r][c] - other.0[r][c]).norm() <= tol))
    }

    /// Adjoint action on the Pauli axes: `u sigma_i u^† = sum_j R[i][j] sigma_j`.
    pub fn rotation_matrix(&self) -> [[f64; 3]; 3] {
        let ud = self.adjoint();
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            let si = SingleQubitUnitary(Pauli::from_axis(i).matrix());
            let conj = self.then_after(&si).then_after(&ud);
            for j in 0..3 {
                let sj = Pauli::from_axis(j).matrix();
                // tr(sigma_j * conj) / 2
                let mut tr = C64::new(0.0, 0.0);
                for a in 0..2 {
                    for b in 0..2 {
                        tr += sj[a][b] * conj.0[b][a];
                    }
                }
                r[i][j] = tr.re * 0.5;
            }
        }
        r
    }

    /// Decomposes into a global phase and a rotation of angle `<= pi/2`.
    pub fn rotation_params(&self) -> RotationParams {
        let m = &self.0;
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mut phase = det.arg() * 0.5;
        let rot = C64::from_polar(1.0, -phase);
        let mut u = [[m[0][0] * rot, m[0][1] * rot], [m[1][0] * rot, m[1][1] * rot]];
        let mut a = (u[0][0].re + u[1][1].re) * 0.5;
        if a < 0.0 {
            phase += core::f64::consts::PI;
            for row in u.iter_mut() {
                for e in row.iter_mut() {
                    *e = -*e;
                }
            }
            a = -a;
        }
        let bz = (u[1][1].im - u[0][0].im) * 0.5;
        let bx = -(u[0][1].im + u[1][0].im) * 0.5;
        let by = (u[1][0].re - u[0][1].re) * 0.5;
        let bn = (bx * bx + by * by + bz * bz).sqrt();
        if bn < 1e-15 {
            return RotationParams { phase, angle: 0.0, axis: [0.0, 0.0, 1.0] };
        }
        RotationParams { phase, angle: bn.atan2(a), axis: [bx / bn, by / bn, bz / bn] }
    }

    /// Same axis and phase, rotation angle scaled by `factor`.
    pub fn with_scaled_angle(&self, factor: f64) -> Self {
        let p = self.rotation_params();
        let r = Self::rotation_unchecked(p.axis, p.angle * factor);
        let ph = C64::from_polar(1.0, p.phase);
        SingleQubitUnitary([
            [r.0[0][0] * ph, r.0[0][1] * ph],
            [r.0[1][0] * ph, r.0[1][1] * ph],
        ])
    }
}

/// Single-qubit unitaries applied simultaneously to every qubit.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalLayer {
    /// The same unitary on every qubit (global beam).
    Homogeneous(SingleQubitUnitary),
    /// One unitary per qubit.
    Inhomogeneous(Vec<SingleQubitUnitary>),
}

impl LocalLayer {
    pub fn identity() -> Self {
        LocalLayer::Homogeneous(SingleQubitUnitary::identity())
    }

    /// `u` on `site`, identity elsewhere.
    pub fn single_site(n_qubits: usize, site: usize, u: SingleQubitUnitary) -> Self {
        let mut us = alloc::vec![SingleQubitUnitary::identity(); n_qubits];
        us[site] = u;
        LocalLayer::Inhomogeneous(us)
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        match self {
            LocalLayer::Homogeneous(u) => check_unitary(u),
            LocalLayer::Inhomogeneous(us) => {
                if us.len() != n_qubits {
                    return Err(Error::LengthMismatch { expected: n_qubits, found: us.len() });
                }
                us.iter().try_for_each(check_unitary)
            }
        }
    }

    pub fn unitary_at(&self, qubit: usize) -> &SingleQubitUnitary {
        match self {
            LocalLayer::Homogeneous(u) => u,
            LocalLayer::Inhomogeneous(us) => &us[qubit],
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match self {
            LocalLayer::Homogeneous(_) => true,
            LocalLayer::Inhomogeneous(us) => us.windows(2).all(|w| w[0].approx_eq(&w[1], UNITARITY_TOL)),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            LocalLayer::Homogeneous(u) => u.is_identity(),
            LocalLayer::Inhomogeneous(us) => us.iter().all(|u| u.is_identity()),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map(|u| u.adjoint())
    }

    fn map(&self, f: impl Fn(&SingleQubitUnitary) -> SingleQubitUnitary) -> Self {
        match self {
            LocalLayer::Homogeneous(u) => LocalLayer::Homogeneous(f(u)),
            LocalLayer::Inhomogeneous(us) => LocalLayer::Inhomogeneous(us.iter().map(f).collect()),
        }
    }

    /// Layer equivalent to applying `self` and then `next`.
    pub fn followed_by(&self, next: &LocalLayer, n_qubits: usize) -> LocalLayer {
        match (self, next) {
            (LocalLayer::Homogeneous(a), LocalLayer::Homogeneous(b)) => {
                LocalLayer::Homogeneous(b.then_after(a))
            }
            _ => LocalLayer::Inhomogeneous(
                (0..n_qubits).map(|q| next.unitary_at(q).then_after(self.unitary_at(q))).collect(),
            ),
        }
        .normalized()
    }

    /// Collapses an inhomogeneous layer with identical entries.
    pub fn normalized(self) -> Self {
        match self {
            LocalLayer::Inhomogeneous(us) if !us.is_empty() && us.windows(2).all(|w| w[0] == w[1]) => {
                LocalLayer::Homogeneous(us[0])
            }
            other => other,
        }
    }

    pub fn approx_eq(&self, other: &LocalLayer, n_qubits: usize, tol: f64) -> bool {
        (0..n_qubits).all(|q| self.unitary_at(q).approx_eq(other.unitary_at(q), tol))
    }
}

fn check_unitary(u: &SingleQubitUnitary) -> Result<()> {
    let deviation = u.unitarity_deviation();
    if deviation <= UNITARITY_TOL {
        Ok(())
    } else {
        Err(Error::NonUnitary { deviation })
    }
}
