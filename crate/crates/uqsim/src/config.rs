//! TOML run configuration.
//!
//! ```toml
//! format = "uqsim-config-1"
//!
//! [target]            # terms, file, or a named model
//! model = "heisenberg"
//! j = 1.0
//! geometry = "chain"
//! n = 4
//!
//! [hardware]
//! platform = "uqs1"   # or "uqs2"
//! gamma = 1.0
//! available_j = [1]
//!
//! [trotter]
//! t_prime = 1.0
//! epsilon = 0.01
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use uqsim_core::compiler::{PairRealization, TrotterOptions};
use uqsim_core::experiments::{build_model, Couplings, FieldSpec, Geometry, ModelKind, NamedModel};
use uqsim_core::hardware::{Boundary, HardwareModel, LatticeModel, LatticeShape, Pattern, TrapArrayModel};
use uqsim_core::pauli::{Hamiltonian, Pauli, PauliString};
use uqsim_core::sim::ErrorModel;

use crate::error::{CliError, CliResult, ParseError};
use crate::formats::parse_hamiltonian;

pub const CONFIG_FORMAT: &str = "uqsim-config-1";

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub format: Option<String>,
    pub target: Option<HamiltonianSpec>,
    pub hardware: Option<HardwareSpec>,
    pub trotter: Option<TrotterSpec>,
    pub simulation: Option<SimulationSpec>,
    pub adiabatic: Option<AdiabaticSpec>,
    pub sweep: Option<SweepSpec>,
    pub crosstalk: Option<CrosstalkSpec>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// A Hamiltonian given by `terms`, by a `file` in the text format, by a
/// named `model`, or by `pair_sum` (`j` times the nearest-neighbour sum of
/// a two-letter Pauli pair).
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub terms: Option<Vec<String>>,
    pub file: Option<PathBuf>,
    pub model: Option<String>,
    pub pair_sum: Option<String>,
    pub j: Option<f64>,
    #[serde(default)]
    pub geometry: GeometrySpec,
    pub n: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub pattern: Option<String>,
    pub boundary: Option<String>,
    pub positions: Option<Vec<[f64; 2]>>,
    pub field_b: Option<f64>,
    pub field_direction: Option<[f64; 3]>,
    pub fields: Option<Vec<[f64; 3]>>,
    pub couplings: Option<Vec<(usize, usize, f64)>>,
    pub couplings_low: Option<f64>,
    pub couplings_high: Option<f64>,
    pub couplings_seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum GeometrySpec {
    #[default]
    Chain,
    Grid,
    Sites,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardwareSpec {
    pub platform: String,
    pub gamma: Option<f64>,
    pub n: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub boundary: Option<String>,
    pub available_j: Option<Vec<usize>>,
    pub diagonal_shifts: Option<bool>,
    pub positions: Option<Vec<[f64; 2]>>,
    pub kappa: Option<f64>,
    pub threshold: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrotterSpec {
    pub t_prime: f64,
    pub epsilon: f64,
    pub realization: Option<String>,
    pub unit_angle: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSpec {
    /// Path to a schedule file; compiled from `[target]` when absent.
    pub schedule: Option<PathBuf>,
    /// Basis index of the initial product state.
    pub initial: Option<usize>,
    pub initial_file: Option<PathBuf>,
    pub eta_local: Option<f64>,
    pub eta_int: Option<f64>,
    pub seed: Option<u64>,
    pub crosstalk: Option<bool>,
    /// Realize the abstract schedule on `[hardware]` before running.
    pub realize: Option<bool>,
    /// Pauli labels such as `ZIZ`.
    #[serde(default)]
    pub observables: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdiabaticSpec {
    pub initial: HamiltonianSpec,
    pub target: HamiltonianSpec,
    pub steps: usize,
    pub theta1: f64,
    pub ramp: Option<String>,
    pub stepping: Option<String>,
    pub record_every: Option<usize>,
    pub eta_local: Option<f64>,
    pub eta_int: Option<f64>,
    pub seed: Option<u64>,
    pub crosstalk: Option<bool>,
    pub gap_samples: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub etas: Vec<f64>,
    pub steps: Vec<usize>,
    pub repetitions: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrosstalkSpec {
    pub n: Option<usize>,
    pub positions: Option<Vec<[f64; 2]>>,
    pub groups: Vec<Vec<usize>>,
    pub threshold: Option<f64>,
    pub kappa: Option<f64>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Config {
    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let mut cfg: Config = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
            CliError::Parse { path: path.to_path_buf(), source: ParseError::new(line, column, e.message().to_string()) }
        })?;
        if let Some(f) = &cfg.format {
            if f != CONFIG_FORMAT {
                return Err(usage(format!("{}: unsupported config format `{f}`", path.display())));
            }
        }
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn section<'a, T>(&self, value: &'a Option<T>, name: &str) -> CliResult<&'a T> {
        value.as_ref().ok_or_else(|| usage(format!("config has no [{name}] section")))
    }

    pub fn target_hamiltonian(&self) -> CliResult<Hamiltonian> {
        self.hamiltonian(self.section(&self.target, "target")?)
    }

    pub fn hamiltonian(&self, spec: &HamiltonianSpec) -> CliResult<Hamiltonian> {
        let sources = [spec.terms.is_some(), spec.file.is_some(), spec.model.is_some(), spec.pair_sum.is_some()];
        if sources.iter().filter(|s| **s).count() != 1 {
            return Err(usage("a Hamiltonian needs exactly one of terms, file, model or pair_sum"));
        }
        if let Some(terms) = &spec.terms {
            let mut text = String::new();
            if let Some(n) = spec.n {
                text.push_str(&format!("qubits {n}\n"));
            }
            for t in terms {
                text.push_str(t);
                text.push('\n');
            }
            return parse_hamiltonian(&text).map_err(|source| CliError::Parse { path: PathBuf::from("[terms]"), source });
        }
        if let Some(file) = &spec.file {
            let path = self.resolve(file);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            return parse_hamiltonian(&text).map_err(|source| CliError::Parse { path, source });
        }
        let geometry = geometry(spec)?;
        if let Some(pair) = &spec.pair_sum {
            return pair_sum(pair, spec.j.unwrap_or(1.0), &geometry);
        }
        let model = named_model(spec, geometry)?;
        Ok(build_model(&model)?)
    }

    pub fn hardware_model(&self) -> CliResult<HardwareModel> {
        hardware(self.section(&self.hardware, "hardware")?)
    }

    pub fn trotter_options(&self) -> CliResult<TrotterOptions> {
        let t = self.section(&self.trotter, "trotter")?;
        let pairs = match t.realization.as_deref().unwrap_or("angle") {
            "angle" => PairRealization::Angle,
            "frequency" => PairRealization::Frequency {
                unit_angle: t.unit_angle.ok_or_else(|| usage("frequency realization needs unit_angle"))?,
            },
            other => return Err(usage(format!("unknown realization `{other}`"))),
        };
        Ok(TrotterOptions { pairs })
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn boundary(s: Option<&str>) -> CliResult<Boundary> {
    match s.unwrap_or("open") {
        "open" => Ok(Boundary::Open),
        "periodic" => Ok(Boundary::Periodic),
        other => Err(usage(format!("unknown boundary `{other}`"))),
    }
}

fn pattern(s: Option<&str>) -> CliResult<Pattern> {
    match s.unwrap_or("rectangular") {
        "rectangular" => Ok(Pattern::Rectangular),
        "triangular" => Ok(Pattern::Triangular),
        "hexagonal" => Ok(Pattern::Hexagonal),
        other => Err(usage(format!("unknown pattern `{other}`"))),
    }
}

fn need<T: Copy>(v: Option<T>, name: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("missing `{name}`")))
}

pub fn geometry(spec: &HamiltonianSpec) -> CliResult<Geometry> {
    let b = boundary(spec.boundary.as_deref())?;
    Ok(match spec.geometry {
        GeometrySpec::Chain => Geometry::Chain { n: need(spec.n, "n")?, boundary: b },
        GeometrySpec::Grid => Geometry::Grid {
            rows: need(spec.rows, "rows")?,
            cols: need(spec.cols, "cols")?,
            boundary: b,
            pattern: pattern(spec.pattern.as_deref())?,
        },
        GeometrySpec::Sites => Geometry::Sites(spec.positions.clone().ok_or_else(|| usage("missing `positions`"))?),
    })
}

fn pair_sum(pair: &str, j: f64, g: &Geometry) -> CliResult<Hamiltonian> {
    let ops: Vec<Pauli> = pair.chars().filter_map(Pauli::from_char).collect();
    if ops.len() != 2 || pair.chars().count() != 2 || ops.contains(&Pauli::I) {
        return Err(usage(format!("pair_sum `{pair}` must be two letters from X, Y, Z")));
    }
    let n = g.n_sites();
    let terms: Vec<PauliString> = g.edges()?.into_iter().map(|(a, b)| PauliString::pair(n, a, ops[0], b, ops[1], j)).collect();
    Ok(Hamiltonian::from_terms(n, terms)?)
}

pub fn named_model(spec: &HamiltonianSpec, geometry: Geometry) -> CliResult<NamedModel> {
    let name = spec.model.as_deref().unwrap_or_default();
    let kind = ModelKind::from_name(name).ok_or_else(|| usage(format!("unknown model `{name}`")))?;
    let couplings = match (&spec.couplings, spec.couplings_low, spec.j) {
        (Some(list), _, _) => Couplings::Explicit(list.iter().map(|&(a, b, v)| ((a, b), v)).collect::<BTreeMap<_, _>>()),
        (None, Some(low), _) => Couplings::Random {
            low,
            high: need(spec.couplings_high, "couplings_high")?,
            seed: spec.couplings_seed,
        },
        (None, None, Some(j)) => Couplings::Uniform(j),
        (None, None, None) => return Err(CliError::Core(uqsim_core::Error::IncompleteModel(format!("{name} needs `j`")))),
    };
    let field = match (&spec.fields, spec.field_b) {
        (Some(list), _) => FieldSpec::PerSite(list.clone()),
        (None, Some(b)) => FieldSpec::Uniform { b, direction: need(spec.field_direction, "field_direction")? },
        (None, None) => FieldSpec::None,
    };
    Ok(NamedModel { kind, couplings, field, geometry })
}

pub fn hardware(h: &HardwareSpec) -> CliResult<HardwareModel> {
    let hw = match h.platform.as_str() {
        "uqs1" => {
            let shape = match (h.rows, h.cols) {
                (Some(rows), Some(cols)) => LatticeShape::Grid { rows, cols },
                _ => LatticeShape::Chain(need(h.n, "n")?),
            };
            let js = h.available_j.clone().unwrap_or_else(|| vec![1]);
            let m = LatticeModel::new(shape, boundary(h.boundary.as_deref())?, &js, h.gamma.unwrap_or(1.0))?
                .with_diagonal_shifts(h.diagonal_shifts.unwrap_or(false));
            HardwareModel::Lattice(m)
        }
        "uqs2" => {
            let mut m = match &h.positions {
                Some(p) => TrapArrayModel::new(p.clone())?,
                None => TrapArrayModel::chain(need(h.n, "n")?)?,
            };
            if let Some(g) = h.gamma {
                m = m.with_gamma(g);
            }
            if let Some(k) = h.kappa {
                m = m.with_kappa(k);
            }
            if let Some(t) = h.threshold {
                m = m.with_threshold(t);
            }
            HardwareModel::Traps(m)
        }
        other => return Err(usage(format!("unknown platform `{other}` (expected uqs1 or uqs2)"))),
    };
    hw.validate()?;
    Ok(hw)
}

/// Error model from optional amplitudes and seed. No amplitudes means no
/// model; amplitudes without a seed are refused.
pub fn error_model(eta_local: Option<f64>, eta_int: Option<f64>, seed: Option<u64>, crosstalk: bool) -> CliResult<Option<ErrorModel>> {
    if eta_local.is_none() && eta_int.is_none() && !crosstalk {
        return Ok(None);
    }
    let seed = seed.ok_or_else(|| CliError::Policy("an error model needs a seed (config `seed` or --seed)".into()))?;
    Ok(Some(ErrorModel::new(eta_local.unwrap_or(0.0), eta_int.unwrap_or(0.0), seed)?.with_crosstalk(crosstalk)))
}

/// Parses an observable label such as `ZIZ` into a Pauli list.
pub fn observable(label: &str, n: usize) -> CliResult<Vec<Pauli>> {
    let ops: Option<Vec<Pauli>> = label.chars().map(Pauli::from_char).collect();
    match ops {
        Some(ops) if ops.len() == n => Ok(ops),
        Some(ops) => Err(usage(format!("observable `{label}` has {} sites, expected {n}", ops.len()))),
        None => Err(usage(format!("observable `{label}` must use only I, X, Y, Z"))),
    }
}
