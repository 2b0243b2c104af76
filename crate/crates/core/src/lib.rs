//! Generalized geometric measure of multiqubit pure states and the
//! multipartite entangling/disentangling powers of unitary operators.
//!
//! The crate provides:
//! - dense complex tensor algebra for states and operators ([`tensor`]);
//! - the generalized geometric measure over all bipartitions ([`ggm`]);
//! - the studied unitary families: diagonal, layered non-diagonal,
//!   DM/Heisenberg evolutions and Haar-random draws ([`zoo`]);
//! - multistart derivative-free maximization over fully separable inputs
//!   ([`optimizer`]);
//! - closed-form three-qubit oracles ([`closed_form`]);
//! - brickwork circuit composition ([`brickwork`]);
//! - cross-check suites used by the `verify` front end ([`verify`]).
//!
//! All randomness is ChaCha8 seeded; every public computation is a pure
//! function of its inputs including seeds, independent of thread count.

pub mod brickwork;
pub mod closed_form;
pub mod error;
pub mod ggm;
mod nelder_mead;
pub mod optimizer;
pub mod sweep;
pub mod tensor;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use ggm::{enumerate_bipartitions, ggm, Bipartition, GgmResult};
pub use optimizer::{
    brute_force_power, disentangling_power, entangling_power, power_gap, Ansatz, FSPoint,
    OptimizerConfig, PowerResult,
};
pub use sweep::{measure_powers, SweepRecord};
pub use tensor::{
    apply_unitary, embed_two_qubit_gate, hermitian_eigenvalues, hermitian_expm, kron,
    partial_trace, C64, CMatrix, CVector, DensityMatrix, HermitianMatrix, PureState, Sign,
    UnitaryMatrix, DEFAULT_MAX_QUBITS,
};
pub use zoo::{LayerParity, OmegaVariant, UnitarySpec, PRNG_ALGORITHM};
