use thiserror::Error;

/// Errors produced by state, operator and optimizer construction.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("amplitude vector has length {len}, expected 2^{num_qubits}")]
    BadAmplitudeLength { len: usize, num_qubits: usize },
    #[error("state is not normalized: |norm - 1| = {defect:.3e}")]
    NotNormalized { defect: f64 },
    #[error("matrix is not unitary: ||U U† - I||_F = {defect:.3e}")]
    NotUnitary { defect: f64 },
    #[error("matrix is not Hermitian: ||H - H†||_F = {defect:.3e}")]
    NotHermitian { defect: f64 },
    #[error("matrix is not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} is not a power of two >= 2")]
    NotQubitDimension { dim: usize },
    #[error("dimension mismatch: operator dim {op_dim}, state dim {state_dim}")]
    DimensionMismatch { op_dim: usize, state_dim: usize },
    #[error("site index {site} out of range 1..={num_qubits}")]
    SiteOutOfRange { site: usize, num_qubits: usize },
    #[error("sites must be distinct and ordered: got ({i}, {j})")]
    BadSitePair { i: usize, j: usize },
    #[error("keep set must be a nonempty strict subset of sites, got {keep:?} of {num_qubits} qubits")]
    BadKeepSet { keep: Vec<usize>, num_qubits: usize },
    #[error("need at least {min} qubits, got {num_qubits}")]
    TooFewQubits { num_qubits: usize, min: usize },
    #[error("{kind} requires {expected} qubit count, got {num_qubits}")]
    ParityMismatch {
        kind: &'static str,
        expected: &'static str,
        num_qubits: usize,
    },
    #[error("no ({parity}, {parity}+1) bonds exist on {num_qubits} sites with open boundary")]
    NoBondsForParity { parity: &'static str, num_qubits: usize },
    #[error("gate must be {expected}x{expected}, got {dim}x{dim}")]
    BadGateDimension { dim: usize, expected: usize },
    #[error("brute-force grid of {points} points exceeds the cap of {cap}")]
    GridTooLarge { points: u128, cap: u128 },
    #[error("closed-form discriminant is negative beyond tolerance: A = {value:.3e}")]
    NegativeDiscriminant { value: f64 },
    #[error("invalid optimizer configuration: {reason}")]
    BadOptimizerConfig { reason: String },
    #[error("angles out of range: {reason}")]
    BadAngles { reason: String },
    #[error("invalid circuit: {reason}")]
    BadCircuit { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
