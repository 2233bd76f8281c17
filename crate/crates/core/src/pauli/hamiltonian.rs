use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::string::pauli_multiply;
use super::{LocalLayer, Pauli, PauliString};
use crate::{Error, Result, C64};

/// Terms with `|coeff|` below this are dropped from canonical form.
pub const PRUNE_TOL: f64 = 1e-14;

/// Real linear combination of Pauli strings in canonical form: sorted by
/// operator sequence (`I < X < Y < Z`, qubit 0 first), merged, zero-pruned.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    n_qubits: usize,
    terms: Vec<PauliString>,
}

impl Hamiltonian {
    pub fn zero(n_qubits: usize) -> Self {
        Hamiltonian { n_qubits, terms: Vec::new() }
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliString>) -> Result<Self> {
        let mut acc: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
        for t in terms {
            if t.n_qubits() != n_qubits {
                return Err(Error::LengthMismatch { expected: n_qubits, found: t.n_qubits() });
            }
            let c = t.coeff();
            *acc.entry(t.into_ops()).or_insert(0.0) += c;
        }
        Ok(Self::from_map(n_qubits, acc))
    }

    fn from_map(n_qubits: usize, acc: BTreeMap<Vec<Pauli>, f64>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| c.abs() >= PRUNE_TOL)
            .map(|(ops, c)| PauliString::new(ops, c).expect("finite sum of finite terms"))
            .collect();
        Hamiltonian { n_qubits, terms }
    }

    /// Parses terms like `(0.5, "XXI")`.
    pub fn from_labels(terms: &[(f64, &str)]) -> Result<Self> {
        let n = terms.first().map_or(0, |(_, l)| l.len());
        let strings = terms
            .iter()
            .map(|(c, l)| PauliString::from_label(l, *c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, strings)
    }

    /// Expands products of `{I, X, Y, Z, sigma+, sigma-}` into Pauli strings.
    /// `sigma+ = |1><0| = (X - iY)/2` and `sigma- = |0><1| = (X + iY)/2`.
    /// The sum must be Hermitian.
    pub fn from_ladder_terms(n_qubits: usize, terms: &[(f64, Vec<Ladder>)]) -> Result<Self> {
        let mut acc: BTreeMap<Vec<Pauli>, C64> = BTreeMap::new();
        for (coeff, ops) in terms {
            if ops.len() != n_qubits {
                return Err(Error::LengthMismatch { expected: n_qubits, found: ops.len() });
            }
            let mut partial: Vec<(Vec<Pauli>, C64)> = alloc::vec![(Vec::with_capacity(n_qubits), C64::new(*coeff, 0.0))];
            for op in ops {
                let expansion = op.expansion();
                partial = partial
                    .into_iter()
                    .flat_map(|(prefix, c)| {
                        expansion.iter().map(move |(p, w)| {
                            let mut next = prefix.clone();
                            next.push(*p);
                            (next, c * *w)
                        })
                    })
                    .collect();
            }
            for (ops, c) in partial {
                *acc.entry(ops).or_insert(C64::new(0.0, 0.0)) += c;
            }
        }
        let mut real = BTreeMap::new();
        for (ops, c) in acc {
            if c.im.abs() > 1e-12 {
                return Err(Error::NonHermitian(c.im));
            }
            real.insert(ops, c.re);
        }
        Ok(Self::from_map(n_qubits, real))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, ops: &[Pauli]) -> f64 {
        self.terms
            .binary_search_by(|t| t.ops().cmp(ops))
            .map_or(0.0, |i| self.terms[i].coeff())
    }

    pub fn coefficient_of(&self, label: &str) -> f64 {
        let ops: Vec<Pauli> = label.chars().filter_map(Pauli::from_char).collect();
        self.coefficient(&ops)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let acc = self.terms.iter().map(|t| (t.ops().to_vec(), t.coeff() * factor)).collect();
        Self::from_map(self.n_qubits, acc)
    }

    /// Sum of squared coefficients; `tr(H^2) / 2^N`.
    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff() * t.coeff()).sum()
    }

    /// Sum of absolute coefficients, an upper bound on the operator norm.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff().abs()).sum()
    }

    /// Largest coefficient magnitude among terms acting on exactly two sites.
    pub fn max_two_body_coeff(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.weight() == 2)
            .map(|t| t.coeff().abs())
            .fold(0.0, f64::max)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.iter().map(|t| t.weight()).max().unwrap_or(0)
    }

    /// Coefficient of the identity string.
    pub fn identity_part(&self) -> f64 {
        self.terms.iter().find(|t| t.is_identity()).map_or(0.0, |t| t.coeff())
    }

    pub fn without_identity(&self) -> Self {
        Hamiltonian {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().filter(|t| !t.is_identity()).cloned().collect(),
        }
    }

    /// True when the dense matrix is real (every term has an even number of Y).
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.y_count() % 2 == 0)
    }

    /// True when every term is a product of `Z` and `I`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|t| t.ops().iter().all(|p| matches!(p, Pauli::I | Pauli::Z)))
    }

    pub fn approx_eq(&self, other: &Hamiltonian, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        let diff = self - other;
        diff.terms.iter().all(|t| t.coeff().abs() <= tol)
    }

    fn combine(&self, other: &Hamiltonian, sign: f64) -> Hamiltonian {
        assert_eq!(self.n_qubits, other.n_qubits, "Hamiltonian size mismatch");
        let mut acc: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
        for t in &self.terms {
            acc.insert(t.ops().to_vec(), t.coeff());
        }
        for t in &other.terms {
            *acc.entry(t.ops().to_vec()).or_insert(0.0) += sign * t.coeff();
        }
        Self::from_map(self.n_qubits, acc)
    }

    pub fn try_add(&self, other: &Hamiltonian) -> Result<Hamiltonian> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::LengthMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(self.combine(other, 1.0))
    }

    /// Relabels qubit `q` as `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Hamiltonian> {
        if perm.len() != self.n_qubits {
            return Err(Error::LengthMismatch { expected: self.n_qubits, found: perm.len() });
        }
        let terms = self.terms.iter().map(|t| {
            let mut ops = alloc::vec![Pauli::I; self.n_qubits];
            for (q, p) in t.ops().iter().enumerate() {
                ops[perm[q]] = *p;
            }
            PauliString::new(ops, t.coeff()).expect("finite")
        });
        Hamiltonian::from_terms(self.n_qubits, terms)
    }
}

/// Panics on size mismatch; use [`Hamiltonian::try_add`] for a checked sum.
impl Add for &Hamiltonian {
    type Output = Hamiltonian;
    fn add(self, rhs: &Hamiltonian) -> Hamiltonian {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Hamiltonian {
    type Output = Hamiltonian;
    fn sub(self, rhs: &Hamiltonian) -> Hamiltonian {
        self.combine(rhs, -1.0)
    }
}

impl Mul<f64> for &Hamiltonian {
    type Output = Hamiltonian;
    fn mul(self, rhs: f64) -> Hamiltonian {
        self.scaled(rhs)
    }
}

impl Neg for &Hamiltonian {
    type Output = Hamiltonian;
    fn neg(self) -> Hamiltonian {
        self.scaled(-1.0)
    }
}

impl fmt::Display for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", t.coeff(), t.label())?;
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Single-site operator accepted by [`Hamiltonian::from_ladder_terms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    I,
    X,
    Y,
    Z,
    /// `|1><0|`
    Plus,
    /// `|0><1|`
    Minus,
}

impl Ladder {
    fn expansion(self) -> Vec<(Pauli, C64)> {
        let one = C64::new(1.0, 0.0);
        let half = C64::new(0.5, 0.0);
        let half_i = C64::new(0.0, 0.5);
        match self {
            Ladder::I => alloc::vec![(Pauli::I, one)],
            Ladder::X => alloc::vec![(Pauli::X, one)],
            Ladder::Y => alloc::vec![(Pauli::Y, one)],
            Ladder::Z => alloc::vec![(Pauli::Z, one)],
            Ladder::Plus => alloc::vec![(Pauli::X, half), (Pauli::Y, -half_i)],
            Ladder::Minus => alloc::vec![(Pauli::X, half), (Pauli::Y, half_i)],
        }
    }
}

/// The anti-Hermitian operator `[h1, h2] = i G` stored through the Hermitian `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct Commutator {
    generator: Hamiltonian,
}

impl Commutator {
    /// `(imaginary coefficient, Pauli string)` pairs of `[h1, h2]`.
    pub fn terms(&self) -> impl Iterator<Item = (f64, &PauliString)> {
        self.generator.terms().iter().map(|t| (t.coeff(), t))
    }

    /// The Hermitian operator `-i [h1, h2]`.
    pub fn generator(&self) -> &Hamiltonian {
        &self.generator
    }

    pub fn into_generator(self) -> Hamiltonian {
        self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_empty()
    }
}

/// `[h1, h2]` expanded in the Pauli basis.
pub fn commutator(h1: &Hamiltonian, h2: &Hamiltonian) -> Result<Commutator> {
    if h1.n_qubits != h2.n_qubits {
        return Err(Error::LengthMismatch { expected: h1.n_qubits, found: h2.n_qubits });
    }
    let mut acc: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
    for p in &h1.terms {
        for q in &h2.terms {
            if p.commutes_with(q) {
                continue;
            }
            // Anticommuting: pq - qp = 2 pq, and the phase of pq is +-i.
            let (phase, r) = pauli_multiply(p, q)?;
            let im = phase.to_complex().im;
            let c = r.coeff();
            *acc.entry(r.into_ops()).or_insert(0.0) += 2.0 * im * c;
        }
    }
    Ok(Commutator { generator: Hamiltonian::from_map(h1.n_qubits, acc) })
}

/// `V h V^†` for `V` the tensor product of the layer's unitaries.
pub fn conjugate(h: &Hamiltonian, layer: &LocalLayer) -> Result<Hamiltonian> {
    layer.validate(h.n_qubits)?;
    let n = h.n_qubits;
    let rotations: Vec<[[f64; 3]; 3]> = match layer {
        LocalLayer::Homogeneous(u) => alloc::vec![u.rotation_matrix(); n],
        LocalLayer::Inhomogeneous(us) => us.iter().map(|u| u.rotation_matrix()).collect(),
    };
    let mut acc: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
    for t in &h.terms {
        let mut partial: Vec<(Vec<Pauli>, f64)> = alloc::vec![(Vec::with_capacity(n), t.coeff())];
        for (q, p) in t.ops().iter().enumerate() {
            match p.axis() {
                None => partial.iter_mut().for_each(|(ops, _)| ops.push(Pauli::I)),
                Some(i) => {
                    let row = rotations[q][i];
                    partial = partial
                        .into_iter()
                        .flat_map(|(ops, c)| {
                            (0..3).filter(move |&j| row[j].abs() > 1e-15).map(move |j| {
                                let mut next = ops.clone();
                                next.push(Pauli::from_axis(j));
                                (next, c * row[j])
                            })
                        })
                        .collect();
                }
            }
        }
        for (ops, c) in partial {
            *acc.entry(ops).or_insert(0.0) += c;
        }
    }
    Ok(Hamiltonian::from_map(n, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::SingleQubitUnitary;

    #[test]
    fn canonical_form_merges_and_prunes() {
        let h = Hamiltonian::from_labels(&[(1.0, "ZI"), (0.5, "XX"), (-1.0, "ZI"), (0.25, "XX")]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coefficient_of("XX"), 0.75);
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let h = Hamiltonian::from_labels(&[(1.0, "ZI"), (1.0, "IZ"), (1.0, "XY")]).unwrap();
        let labels: Vec<_> = h.terms().iter().map(|t| t.label()).collect();
        assert_eq!(labels, ["IZ", "XY", "ZI"]);
    }

    #[test]
    fn commutator_of_z_and_x() {
        let z = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
        let x = Hamiltonian::from_labels(&[(1.0, "X")]).unwrap();
        let c = commutator(&z, &x).unwrap();
        // [Z, X] = 2iY
        let terms: Vec<_> = c.terms().map(|(im, t)| (im, t.label())).collect();
        assert_eq!(terms, [(2.0, alloc::string::String::from("Y"))]);
    }

    #[test]
    fn self_commutator_vanishes() {
        let h = Hamiltonian::from_labels(&[(0.3, "XZ"), (1.2, "YY"), (-0.7, "ZI")]).unwrap();
        assert!(commutator(&h, &h).unwrap().is_zero());
    }

    #[test]
    fn three_body_generator() {
        let h1 = Hamiltonian::from_labels(&[(1.0, "IZZ")]).unwrap();
        let h2 = Hamiltonian::from_labels(&[(1.0, "XXI")]).unwrap();
        let g = commutator(&h1, &h2).unwrap().into_generator();
        assert_eq!(g, Hamiltonian::from_labels(&[(2.0, "XYZ")]).unwrap());
    }

    #[test]
    fn commutator_size_mismatch() {
        let a = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
        let b = Hamiltonian::from_labels(&[(1.0, "ZZ")]).unwrap();
        assert!(commutator(&a, &b).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let h = Hamiltonian::from_labels(&[(1.0, "ZI"), (1.0, "IZ")]).unwrap();
        assert_eq!(conjugate(&h, &LocalLayer::identity()).unwrap(), h);
        let flipped = conjugate(&h, &LocalLayer::Homogeneous(SingleQubitUnitary::pauli(Pauli::X))).unwrap();
        assert_eq!(flipped, h.scaled(-1.0));

        let gamma = 0.7;
        let zz = Hamiltonian::from_labels(&[(gamma, "ZZ")]).unwrap();
        let v2 = LocalLayer::Homogeneous(SingleQubitUnitary::quarter_turn(Pauli::X));
        let yy = conjugate(&zz, &v2).unwrap();
        assert!(yy.approx_eq(&Hamiltonian::from_labels(&[(gamma, "YY")]).unwrap(), 1e-15));
    }

    #[test]
    fn non_unitary_layer_is_rejected() {
        let h = Hamiltonian::from_labels(&[(1.0, "Z")]).unwrap();
        let bad = SingleQubitUnitary::new_unchecked([[C64::new(2.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]]);
        assert!(matches!(conjugate(&h, &LocalLayer::Homogeneous(bad)), Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn ladder_expansion_of_flip_flop() {
        // sigma+ sigma- + sigma- sigma+ = (XX + YY) / 2
        let h = Hamiltonian::from_ladder_terms(
            2,
            &[(1.0, alloc::vec![Ladder::Plus, Ladder::Minus]), (1.0, alloc::vec![Ladder::Minus, Ladder::Plus])],
        )
        .unwrap();
        assert_eq!(h, Hamiltonian::from_labels(&[(0.5, "XX"), (0.5, "YY")]).unwrap());
        let bad = Hamiltonian::from_ladder_terms(1, &[(1.0, alloc::vec![Ladder::Plus])]);
        assert!(matches!(bad, Err(Error::NonHermitian(_))));
    }
}
