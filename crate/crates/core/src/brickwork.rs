//! Layered (brickwork) global unitaries built from per-layer gate sources:
//! fixed gates, bond-Hamiltonian evolutions, or Haar-random gates shared or
//! drawn independently per bond.
//!
//! Layer list order is action order on states, so as a matrix product the
//! first layer in the list is the rightmost factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::OptimizerConfig;
use crate::sweep::{measure_powers, SweepRecord};
use crate::tensor::{embed_two_qubit_gate, evolve, CMatrix, HermitianMatrix, UnitaryMatrix};
use crate::zoo::{haar_from_rng, seeded_rng, LayerParity, UnitarySpec};

/// Where a layer's two-qubit bond gate comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum GateSource {
    /// One fixed 4x4 gate on every bond.
    Fixed { gate: UnitaryMatrix },
    /// `exp(-i bond t)` of a fixed 4x4 bond Hamiltonian on every bond.
    FromHamiltonian { bond: HermitianMatrix, t: f64 },
    /// One Haar draw from `seed`, reused on every bond.
    HaarShared { seed: u64 },
    /// Independent Haar draws; bond `k` uses stream `k` of `seed`.
    HaarPerBond { seed: u64 },
}

/// One brickwork layer: a parity selecting the bonds plus the gate source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub parity: LayerParity,
    #[serde(flatten)]
    pub gate_source: GateSource,
}

/// A full circuit: layer list in action order (first acts first).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub num_qubits: usize,
    pub layers: Vec<LayerSpec>,
}

impl CircuitSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_qubits < 2 {
            return Err(Error::TooFewQubits {
                num_qubits: self.num_qubits,
                min: 2,
            });
        }
        for layer in &self.layers {
            if layer.parity.bonds(self.num_qubits).is_empty() {
                return Err(Error::BadCircuit {
                    reason: format!(
                        "no {} bonds exist on {} sites",
                        layer.parity.name(),
                        self.num_qubits
                    ),
                });
            }
            match &layer.gate_source {
                GateSource::Fixed { gate } => {
                    if gate.dim() != 4 {
                        return Err(Error::BadGateDimension {
                            dim: gate.dim(),
                            expected: 4,
                        });
                    }
                }
                GateSource::FromHamiltonian { bond, .. } => {
                    if bond.dim() != 4 {
                        return Err(Error::BadGateDimension {
                            dim: bond.dim(),
                            expected: 4,
                        });
                    }
                }
                GateSource::HaarShared { .. } | GateSource::HaarPerBond { .. } => {}
            }
        }
        Ok(())
    }
}

/// Global unitary of one layer.
pub fn build_layer_unitary(num_qubits: usize, layer: &LayerSpec) -> Result<UnitaryMatrix> {
    let bonds = layer.parity.bonds(num_qubits);
    if bonds.is_empty() {
        return Err(Error::BadCircuit {
            reason: format!(
                "no {} bonds exist on {} sites",
                layer.parity.name(),
                num_qubits
            ),
        });
    }
    let dim = 1usize << num_qubits;
    let mut entries = CMatrix::identity(dim, dim);
    for (k, (i, j)) in bonds.iter().enumerate() {
        let gate = match &layer.gate_source {
            GateSource::Fixed { gate } => gate.clone(),
            GateSource::FromHamiltonian { bond, t } => evolve(bond, *t),
            GateSource::HaarShared { seed } => {
                let mut rng = seeded_rng(*seed, 0);
                haar_from_rng(4, &mut rng)
            }
            GateSource::HaarPerBond { seed } => {
                let mut rng = seeded_rng(*seed, k as u64);
                haar_from_rng(4, &mut rng)
            }
        };
        let embedded = embed_two_qubit_gate(&gate, *i, *j, num_qubits)?;
        // Bonds within a layer have disjoint supports, so this order is
        // immaterial.
        entries = embedded.entries() * entries;
    }
    UnitaryMatrix::new(entries)
}

/// Product of per-layer unitaries in action order; an empty layer list gives
/// the identity. Reproducible from the embedded seeds.
pub fn build_circuit_unitary(circuit: &CircuitSpec) -> Result<UnitaryMatrix> {
    circuit.validate()?;
    let dim = 1usize << circuit.num_qubits;
    let mut entries = CMatrix::identity(dim, dim);
    for layer in &circuit.layers {
        let layer_u = build_layer_unitary(circuit.num_qubits, layer)?;
        entries = layer_u.entries() * entries;
    }
    UnitaryMatrix::new(entries)
}

/// Entangling/disentangling powers and their gap for the composed circuit.
pub fn circuit_power_gap(circuit: &CircuitSpec, cfg: &OptimizerConfig) -> Result<SweepRecord> {
    let spec = UnitarySpec::Brickwork {
        circuit: circuit.clone(),
    };
    measure_powers(&spec, "sample", 0.0, cfg)
}
