#[allow(unused_imports)]
use num_traits::Float;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::compiler::{plan_cycle, CyclePlan, PairRealization, TrotterOptions};
use crate::hardware::{geometry_remap, realize_schedule, Boundary, HardwareModel, LatticeModel, Pattern};
use crate::pauli::{Hamiltonian, Pauli, PauliString};
use crate::sim::NoiseSource;
use crate::{Error, Result};

/// Raw angle of one frequency-mode gate used by [`protocol_for_model`].
pub const DEFAULT_UNIT_ANGLE: f64 = 0.01;

const DIRECTION_TOL: f64 = 1e-12;

/// Site layout of a model. Sites of a grid are numbered row-major.
#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    Chain { n: usize, boundary: Boundary },
    Grid { rows: usize, cols: usize, boundary: Boundary, pattern: Pattern },
    /// Free positions; neighbours are the pairs at the minimum distance.
    Sites(Vec<[f64; 2]>),
}

impl Geometry {
    pub fn chain(n: usize) -> Self {
        Geometry::Chain { n, boundary: Boundary::Open }
    }

    pub fn n_sites(&self) -> usize {
        match self {
            Geometry::Chain { n, .. } => *n,
            Geometry::Grid { rows, cols, .. } => rows * cols,
            Geometry::Sites(p) => p.len(),
        }
    }

    fn dims(&self) -> Option<(usize, usize, Boundary, Pattern)> {
        match self {
            Geometry::Chain { n, boundary } => Some((1, *n, *boundary, Pattern::Rectangular)),
            Geometry::Grid { rows, cols, boundary, pattern } => Some((*rows, *cols, *boundary, *pattern)),
            Geometry::Sites(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites() < 2 {
            return Err(Error::InvalidGeometry(alloc::format!("{} sites; at least two are needed", self.n_sites())));
        }
        if let Geometry::Sites(p) = self {
            if p.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite);
            }
            for a in 0..p.len() {
                for b in a + 1..p.len() {
                    if self.distance(a, b) == 0.0 {
                        return Err(Error::InvalidGeometry(alloc::format!("sites {a} and {b} coincide")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Embedded position. Triangular grids use `c e1 + r e2` with
    /// `e1 = (1, 0)`, `e2 = (-1/2, sqrt 3 / 2)`.
    pub fn position(&self, site: usize) -> [f64; 2] {
        match self.dims() {
            None => match self {
                Geometry::Sites(p) => p[site],
                _ => unreachable!(),
            },
            Some((_, cols, _, pattern)) => embed((site / cols) as f64, (site % cols) as f64, pattern),
        }
    }

    /// Euclidean distance; periodic layouts use the nearest image.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        let (pa, pb) = (self.position(a), self.position(b));
        let direct = ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2)).sqrt();
        let Some((rows, cols, Boundary::Periodic, pattern)) = self.dims() else {
            return direct;
        };
        let (ra, ca) = ((a / cols) as f64, (a % cols) as f64);
        let (rb, cb) = ((b / cols) as f64, (b % cols) as f64);
        let row_shifts: &[f64] = if rows > 1 { &[-1.0, 0.0, 1.0] } else { &[0.0] };
        let col_shifts: &[f64] = if cols > 1 { &[-1.0, 0.0, 1.0] } else { &[0.0] };
        let mut best = direct;
        for dr in row_shifts {
            for dc in col_shifts {
                let p = embed(rb + dr * rows as f64, cb + dc * cols as f64, pattern);
                let q = embed(ra, ca, pattern);
                best = best.min(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
            }
        }
        best
    }

    /// Nearest-neighbour pairs `(a, b)`, `a < b`, sorted.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        self.validate()?;
        match self {
            Geometry::Chain { n, boundary } => {
                let mut e: Vec<(usize, usize)> = (0..n - 1).map(|a| (a, a + 1)).collect();
                if *boundary == Boundary::Periodic && *n > 2 {
                    e.push((0, n - 1));
                }
                e.sort_unstable();
                Ok(e)
            }
            Geometry::Grid { rows, cols, boundary, pattern } => {
                if *rows < 2 || *cols < 2 {
                    return Err(Error::InvalidGeometry("grids need at least two rows and two columns".into()));
                }
                geometry_remap(*pattern, &LatticeModel::grid(*rows, *cols, *boundary, &[1])?)
            }
            Geometry::Sites(p) => {
                let n = p.len();
                let dmin = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| self.distance(a, b)).fold(f64::INFINITY, f64::min);
                let mut e = Vec::new();
                for a in 0..n {
                    for b in a + 1..n {
                        if self.distance(a, b) <= dmin * (1.0 + 1e-9) {
                            e.push((a, b));
                        }
                    }
                }
                Ok(e)
            }
        }
    }
}

fn embed(r: f64, c: f64, pattern: Pattern) -> [f64; 2] {
    match pattern {
        Pattern::Triangular => [c - 0.5 * r, r * 3f64.sqrt() / 2.0],
        _ => [c, r],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `(1/2) sum_{a != b} J / d^3 (s+ s- + s- s+)`.
    Dipole,
    /// `-(J/2) sum_<a,b> Z Z`.
    Ising,
    /// `-(J/2) sum_<a,b> (X X + Y Y + Z Z)`.
    Heisenberg,
    /// `-(1/2) sum_<a,b> J_ab Z Z + sum_a B_a . sigma`.
    RandomIsing,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Dipole => "dipole",
            ModelKind::Ising => "ising",
            ModelKind::Heisenberg => "heisenberg",
            ModelKind::RandomIsing => "random_ising",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [ModelKind::Dipole, ModelKind::Ising, ModelKind::Heisenberg, ModelKind::RandomIsing]
            .into_iter()
            .find(|k| k.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Couplings {
    Uniform(f64),
    /// `J_ab` per neighbour pair.
    Explicit(BTreeMap<(usize, usize), f64>),
    /// `J_ab` uniform on `[low, high)`, drawn in edge order.
    Random { low: f64, high: f64, seed: Option<u64> },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub enum FieldSpec {
    #[default]
    None,
    /// `B sum_a n . sigma_a` with unit `direction`.
    Uniform { b: f64, direction: [f64; 3] },
    /// `(B_x, B_y, B_z)` per site.
    PerSite(Vec<[f64; 3]>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedModel {
    pub kind: ModelKind,
    pub couplings: Couplings,
    pub field: FieldSpec,
    pub geometry: Geometry,
}

impl NamedModel {
    pub fn new(kind: ModelKind, j: f64, geometry: Geometry) -> Self {
        NamedModel { kind, couplings: Couplings::Uniform(j), field: FieldSpec::None, geometry }
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = field;
        self
    }

    pub fn with_couplings(mut self, couplings: Couplings) -> Self {
        self.couplings = couplings;
        self
    }

    pub fn n_sites(&self) -> usize {
        self.geometry.n_sites()
    }

    /// Per-edge couplings of the nearest-neighbour models.
    pub fn edge_couplings(&self) -> Result<Vec<((usize, usize), f64)>> {
        let edges = self.geometry.edges()?;
        match (&self.couplings, self.kind) {
            (Couplings::Uniform(j), _) => {
                finite(*j)?;
                Ok(edges.into_iter().map(|e| (e, *j)).collect())
            }
            (_, kind) if kind != ModelKind::RandomIsing => Err(Error::IncompleteModel(alloc::format!(
                "{} takes a single coupling J",
                kind.name()
            ))),
            (Couplings::Explicit(map), _) => {
                let norm: BTreeMap<(usize, usize), f64> = map.iter().map(|(&(a, b), v)| ((a.min(b), a.max(b)), *v)).collect();
                let known: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
                if let Some((a, b)) = norm.keys().find(|k| !known.contains(k)) {
                    return Err(Error::InvalidArgument(alloc::format!("({a},{b}) is not a neighbour pair")));
                }
                edges
                    .into_iter()
                    .map(|e| {
                        let v = *norm.get(&e).ok_or_else(|| Error::IncompleteModel(alloc::format!("missing J for pair ({},{})", e.0, e.1)))?;
                        finite(v)?;
                        Ok((e, v))
                    })
                    .collect()
            }
            (Couplings::Random { low, high, seed }, _) => {
                let seed = seed.ok_or(Error::MissingSeed)?;
                finite(*low)?;
                finite(*high)?;
                if low > high {
                    return Err(Error::InvalidArgument(alloc::format!("empty coupling range [{low}, {high})")));
                }
                let mut rng = NoiseSource::new(seed);
                Ok(edges.into_iter().map(|e| (e, low + (high - low) * rng.uniform())).collect())
            }
        }
    }
}

fn finite(v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn field_terms(spec: &FieldSpec, n: usize, out: &mut Vec<PauliString>) -> Result<()> {
    let per_site: Vec<[f64; 3]> = match spec {
        FieldSpec::None => return Ok(()),
        FieldSpec::Uniform { b, direction } => {
            finite(*b)?;
            let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > DIRECTION_TOL {
                return Err(Error::NonUnitDirection(norm));
            }
            alloc::vec![direction.map(|v| v * b); n]
        }
        FieldSpec::PerSite(list) => {
            if list.len() != n {
                return Err(Error::IncompleteModel(alloc::format!("{} field vectors for {n} sites", list.len())));
            }
            list.clone()
        }
    };
    for (q, b) in per_site.iter().enumerate() {
        for (axis, v) in b.iter().enumerate() {
            finite(*v)?;
            out.push(PauliString::single(n, q, Pauli::from_axis(axis), *v));
        }
    }
    Ok(())
}

/// Canonical Hamiltonian of a named model.
///
/// The dipole sum runs over all pairs with the geometry's distances; per
/// unordered pair it contributes `(J / 2 d^3)(X X + Y Y)`.
pub fn build_model(spec: &NamedModel) -> Result<Hamiltonian> {
    spec.geometry.validate()?;
    let n = spec.n_sites();
    let mut terms = Vec::new();
    match spec.kind {
        ModelKind::Dipole => {
            let Couplings::Uniform(j) = spec.couplings else {
                return Err(Error::IncompleteModel("dipole takes a single coupling J".into()));
            };
            finite(j)?;
            for a in 0..n {
                for b in a + 1..n {
                    let c = j / (2.0 * spec.geometry.distance(a, b).powi(3));
                    terms.push(PauliString::pair(n, a, Pauli::X, b, Pauli::X, c));
                    terms.push(PauliString::pair(n, a, Pauli::Y, b, Pauli::Y, c));
                }
            }
        }
        ModelKind::Ising | ModelKind::RandomIsing => {
            if spec.kind == ModelKind::RandomIsing && spec.field == FieldSpec::None {
                return Err(Error::IncompleteModel("random_ising needs the site fields B_a".into()));
            }
            for ((a, b), j) in spec.edge_couplings()? {
                terms.push(PauliString::pair(n, a, Pauli::Z, b, Pauli::Z, -j / 2.0));
            }
        }
        ModelKind::Heisenberg => {
            for ((a, b), j) in spec.edge_couplings()? {
                for p in Pauli::AXES {
                    terms.push(PauliString::pair(n, a, p, b, p, -j / 2.0));
                }
            }
        }
    }
    field_terms(&spec.field, n, &mut terms)?;
    Hamiltonian::from_terms(n, terms)
}

/// A model compiled to one Trotter cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelProtocol {
    /// Hamiltonian actually simulated (the dipole tail is cut at the
    /// longest lattice shift).
    pub target: Hamiltonian,
    pub plan: CyclePlan,
    pub options: TrotterOptions,
}

/// Plans one Trotter cycle of `spec` on `hw`.
///
/// Random Ising couplings on a trap array are realized by gate frequency
/// with angle [`DEFAULT_UNIT_ANGLE`]; everything else by gate angle.
pub fn protocol_for_model(spec: &NamedModel, hw: &HardwareModel) -> Result<ModelProtocol> {
    let options = match (spec.kind, hw) {
        (ModelKind::RandomIsing, HardwareModel::Traps(_)) => {
            TrotterOptions { pairs: PairRealization::Frequency { unit_angle: DEFAULT_UNIT_ANGLE } }
        }
        _ => TrotterOptions::default(),
    };
    protocol_for_model_with(spec, hw, &options)
}

pub fn protocol_for_model_with(spec: &NamedModel, hw: &HardwareModel, options: &TrotterOptions) -> Result<ModelProtocol> {
    let mut target = build_model(spec)?;
    if let (ModelKind::Dipole, HardwareModel::Lattice(m)) = (spec.kind, hw) {
        target = truncate_to_shifts(&target, m)?;
    }
    let plan = plan_cycle(&target, hw, options)?;
    realize_schedule(&plan.cycle_schedule(1e-3), hw)?;
    Ok(ModelProtocol { target, plan, options: *options })
}

fn truncate_to_shifts(h: &Hamiltonian, m: &LatticeModel) -> Result<Hamiltonian> {
    let mut reach = BTreeSet::new();
    for &j in &m.available_j {
        for axis in m.axes() {
            reach.extend(m.translation_class(j, axis).iter().map(|t| (t.a, t.b)));
        }
    }
    let kept = h.terms().iter().filter(|t| {
        let s: Vec<usize> = t.support().collect();
        s.len() != 2 || reach.contains(&(s[0], s[1]))
    });
    Hamiltonian::from_terms(h.n_qubits(), kept.cloned())
}
