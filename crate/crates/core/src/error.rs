use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coefficient is not finite")]
    NonFinite,
    #[error("unitarity check failed (max deviation {deviation:e})")]
    NonUnitary { deviation: f64 },
    #[error("expected a two-qubit Hamiltonian, found {0} qubits")]
    NotTwoQubit(usize),
    #[error("term {0} acts on more than two sites")]
    ManyBodyTerm(String),
    #[error("non-Hermitian operator: imaginary Pauli coefficient {0:e}")]
    NonHermitian(f64),
    #[error("invalid control weights: {0}")]
    InvalidWeights(String),
    #[error("coefficient matrix is not symmetric (max asymmetry {0:e}); homogeneous control only produces exchange-symmetric interactions")]
    Asymmetric(f64),
    #[error("raw coupling gamma must be nonzero and finite")]
    ZeroCoupling,
    #[error("infeasible with homogeneous control: sign of gamma ({gamma}) must coincide with the sign of every non-vanishing eigenvalue of M (eigenvalues {eigenvalues:?})")]
    Infeasible { gamma: f64, eigenvalues: [f64; 3] },
    #[error("target coefficient matrix is not diagonal")]
    NotDiagonal,
    #[error("unknown protocol `{0}`")]
    UnknownProtocol(String),
    #[error("hardware constraint violated: {0}")]
    Hardware(String),
    #[error("shift distance j = {0} is not available on this lattice")]
    UnavailableShift(usize),
    #[error("at least two ions must be pushed")]
    TooFewIons,
    #[error("invalid pulse profile: {0}")]
    InvalidProfile(String),
    #[error("pulse groups overlap on ion {0}")]
    OverlappingGroups(usize),
    #[error("operation requires a two-dimensional lattice")]
    NotTwoDimensional,
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("beam-compensation system is singular or ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },
    #[error("direction vector is not unit length (norm {0})")]
    NonUnitDirection(f64),
    #[error("jitter amplitude {0} outside [0, 1)")]
    NoiseOutOfRange(f64),
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("ZZ gate needs two distinct qubits, got {0} twice")]
    SameQubit(usize),
    #[error("{n_qubits} qubits exceeds the cap of {cap}")]
    CapExceeded { n_qubits: usize, cap: usize },
    #[error("state norm drifted to {0}")]
    NormDrift(f64),
    #[error("gapless path: minimum gap {0:e} is below the degeneracy tolerance")]
    Gapless(f64),
    #[error("incomplete model parameters: {0}")]
    IncompleteModel(String),
    #[error("random coefficients require an explicit seed")]
    MissingSeed,
    #[error("decoupling echo requires a generator of Z and ZZ terms only, found {0}")]
    NonDiagonalGenerator(String),
    #[error("execution log does not match the schedule at instruction {0}")]
    ReplayMismatch(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
