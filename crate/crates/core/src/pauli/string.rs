use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::{Error, Result, C64};

/// Single-site Pauli operator. The derived order `I < X < Y < Z` is the
/// canonical term order of [`Hamiltonian`](super::Hamiltonian).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const AXES: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// Product `self * other` as a phase and a Pauli.
    pub fn mul(self, other: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, X) => (Phase::MINUS_I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, Y) => (Phase::MINUS_I, X),
            (Z, X) => (Phase::I, Y),
            (X, Z) => (Phase::MINUS_I, Y),
        }
    }

    /// Axis index 0, 1, 2 for X, Y, Z; `None` for the identity.
    pub fn axis(self) -> Option<usize> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(0),
            Pauli::Y => Some(1),
            Pauli::Z => Some(2),
        }
    }

    pub fn from_axis(axis: usize) -> Pauli {
        Pauli::AXES[axis]
    }

    pub fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn has_z(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// 2x2 matrix in the computational basis, row-major.
    pub fn matrix(self) -> [[C64; 2]; 2] {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> C64 {
        match self.0 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-site Paulis with a real coefficient.
/// `ops[q]` acts on qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliString {
    ops: Vec<Pauli>,
    coeff: f64,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>, coeff: f64) -> Result<Self> {
        if !coeff.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(PauliString { ops, coeff })
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString { ops: alloc::vec![Pauli::I; n_qubits], coeff: 1.0 }
    }

    /// Parses a label such as `"XIZ"` (character `q` acts on qubit `q`).
    pub fn from_label(label: &str, coeff: f64) -> Result<Self> {
        let ops = label
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::InvalidArgument(alloc::format!("bad Pauli label `{label}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ops, coeff)
    }

    /// `coeff * P` on `site`, identity elsewhere.
    pub fn single(n_qubits: usize, site: usize, p: Pauli, coeff: f64) -> Self {
        let mut ops = alloc::vec![Pauli::I; n_qubits];
        ops[site] = p;
        PauliString { ops, coeff }
    }

    /// `coeff * P_a Q_b`, identity elsewhere.
    pub fn pair(n_qubits: usize, a: usize, pa: Pauli, b: usize, pb: Pauli, coeff: f64) -> Self {
        let mut ops = alloc::vec![Pauli::I; n_qubits];
        ops[a] = pa;
        ops[b] = pb;
        PauliString { ops, coeff }
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    pub fn into_ops(self) -> Vec<Pauli> {
        self.ops
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn with_coeff(mut self, coeff: f64) -> Self {
        self.coeff = coeff;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.ops.len()
    }

    /// Sites carrying a non-identity operator.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.ops.iter().enumerate().filter(|(_, p)| **p != Pauli::I).map(|(q, _)| q)
    }

    pub fn weight(&self) -> usize {
        self.support().count()
    }

    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|p| *p == Pauli::I)
    }

    /// Bit masks `(x, z)` with qubit `q` at bit `q`; `Y` sets both.
    pub fn masks(&self) -> (u64, u64) {
        masks_of(&self.ops)
    }

    pub fn y_count(&self) -> usize {
        self.ops.iter().filter(|p| **p == Pauli::Y).count()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = self
            .ops
            .iter()
            .zip(&other.ops)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        anti % 2 == 0
    }

    pub fn label(&self) -> String {
        self.ops.iter().map(|p| p.as_char()).collect()
    }
}

pub(crate) fn masks_of(ops: &[Pauli]) -> (u64, u64) {
    let mut x = 0u64;
    let mut z = 0u64;
    for (q, p) in ops.iter().enumerate() {
        if p.has_x() {
            x |= 1 << q;
        }
        if p.has_z() {
            z |= 1 << q;
        }
    }
    (x, z)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.coeff, self.label())
    }
}

/// Sitewise product `p * q`. The returned string carries
/// `p.coeff * q.coeff`; the accumulated power of `i` is returned separately.
pub fn pauli_multiply(p: &PauliString, q: &PauliString) -> Result<(Phase, PauliString)> {
    if p.ops.len() != q.ops.len() {
        return Err(Error::LengthMismatch { expected: p.ops.len(), found: q.ops.len() });
    }
    let mut phase = Phase::ONE;
    let ops = p
        .ops
        .iter()
        .zip(&q.ops)
        .map(|(a, b)| {
            let (ph, r) = a.mul(*b);
            phase = phase * ph;
            r
        })
        .collect();
    Ok((phase, PauliString { ops, coeff: p.coeff * q.coeff }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_products() {
        let x = PauliString::from_label("X", 1.0).unwrap();
        let y = PauliString::from_label("Y", 1.0).unwrap();
        let (ph, r) = pauli_multiply(&x, &x).unwrap();
        assert_eq!(ph, Phase::ONE);
        assert!(r.is_identity());
        let (ph, r) = pauli_multiply(&x, &y).unwrap();
        assert_eq!(ph, Phase::I);
        assert_eq!(r.label(), "Z");
    }

    #[test]
    fn two_site_product_matches_matrix_product() {
        // (Z ⊗ I)(X ⊗ X): qubit 0 = Z·X = iY, qubit 1 = I·X = X.
        let zi = PauliString::from_label("ZI", 1.0).unwrap();
        let xx = PauliString::from_label("XX", 1.0).unwrap();
        let (ph, r) = pauli_multiply(&zi, &xx).unwrap();
        assert_eq!(ph, Phase::I);
        assert_eq!(r.label(), "YX");
    }

    #[test]
    fn coefficients_multiply() {
        let a = PauliString::from_label("Z", 2.0).unwrap();
        let b = PauliString::from_label("Z", -1.5).unwrap();
        let (_, r) = pauli_multiply(&a, &b).unwrap();
        assert_eq!(r.coeff(), -3.0);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let a = PauliString::from_label("ZZ", 1.0).unwrap();
        let b = PauliString::from_label("Z", 1.0).unwrap();
        assert_eq!(
            pauli_multiply(&a, &b),
            Err(Error::LengthMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn non_finite_coefficient_is_rejected() {
        assert_eq!(PauliString::new(alloc::vec![Pauli::X], f64::NAN), Err(Error::NonFinite));
    }

    #[test]
    fn commutation_parity() {
        let a = PauliString::from_label("XZ", 1.0).unwrap();
        let b = PauliString::from_label("ZX", 1.0).unwrap();
        let c = PauliString::from_label("ZI", 1.0).unwrap();
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
    }
}
