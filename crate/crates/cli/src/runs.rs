//! Runnable experiment configurations. A `RunConfig` captures everything a
//! data file depends on; executing one is deterministic for any thread count.

use anyhow::{bail, Context};
use entpower::brickwork::{circuit_power_gap, CircuitSpec, GateSource, LayerSpec};
use entpower::sweep::{measure_powers, SweepRecord};
use entpower::zoo::{seeded_rng, InnerGate, LayerParity, UnitarySpec};
use entpower::OptimizerConfig;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaKind {
    NdEven,
    NdOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeKind {
    Dm,
    DmH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScatterKind {
    Diag { n: usize },
    Haar { dim: usize },
}

/// Layer seeding discipline for sampled two-layer circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircuitMode {
    /// One shared Haar gate in every layer.
    SameHaar,
    /// An independent shared gate per layer.
    DistinctHaar,
    /// Independent gates per bond, fresh seed per layer.
    PerBond,
}

/// A complete, serializable description of one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    /// Both powers of a single unitary.
    Power {
        spec: UnitarySpec,
        optimizer: OptimizerConfig,
    },
    /// Lambda sweep of a non-diagonal construction over `[0, 2pi]`.
    ScanLambda {
        kind: LambdaKind,
        n: usize,
        #[serde(default)]
        inner: InnerGate,
        grid: usize,
        optimizer: OptimizerConfig,
    },
    /// Time sweep of a Hamiltonian evolution over `[0, pi]`.
    ScanTime {
        kind: TimeKind,
        n: usize,
        grid: usize,
        optimizer: OptimizerConfig,
    },
    /// Independent random unitaries; sample `k` draws its seed from stream
    /// `k` of the optimizer seed.
    RandomScatter {
        #[serde(flatten)]
        kind: ScatterKind,
        samples: usize,
        optimizer: OptimizerConfig,
    },
    /// Both powers of one explicit brickwork circuit.
    Circuit {
        circuit: CircuitSpec,
        optimizer: OptimizerConfig,
    },
    /// Sampled alternating-layer Haar circuits (first layer odd).
    CircuitEnsemble {
        n: usize,
        mode: CircuitMode,
        depth: usize,
        samples: usize,
        optimizer: OptimizerConfig,
    },
}

impl RunConfig {
    pub fn optimizer(&self) -> &OptimizerConfig {
        match self {
            RunConfig::Power { optimizer, .. }
            | RunConfig::ScanLambda { optimizer, .. }
            | RunConfig::ScanTime { optimizer, .. }
            | RunConfig::RandomScatter { optimizer, .. }
            | RunConfig::Circuit { optimizer, .. }
            | RunConfig::CircuitEnsemble { optimizer, .. } => optimizer,
        }
    }

    /// Largest qubit count the run touches, for the front-end cap.
    pub fn num_qubits(&self) -> usize {
        match self {
            RunConfig::Power { spec, .. } => spec.dim().trailing_zeros() as usize,
            RunConfig::ScanLambda { n, .. }
            | RunConfig::ScanTime { n, .. }
            | RunConfig::CircuitEnsemble { n, .. } => *n,
            RunConfig::RandomScatter { kind, .. } => match kind {
                ScatterKind::Diag { n } => *n,
                ScatterKind::Haar { dim } => dim.next_power_of_two().trailing_zeros() as usize,
            },
            RunConfig::Circuit { circuit, .. } => circuit.num_qubits,
        }
    }
}

/// The sweep variable a single-unitary run reports.
fn power_sweep_var(spec: &UnitarySpec) -> (&'static str, f64) {
    match spec {
        UnitarySpec::DiagPhase { phi, .. } => ("phi", *phi),
        UnitarySpec::DiagRandom { seed, .. } => ("seed", *seed as f64),
        UnitarySpec::NdEven { lambda, .. } | UnitarySpec::NdOdd { lambda, .. } => {
            ("lambda", *lambda)
        }
        UnitarySpec::Dm { t, .. } | UnitarySpec::DmH { t, .. } => ("t", *t),
        UnitarySpec::Haar { seed, .. } => ("seed", *seed as f64),
        UnitarySpec::Brickwork { .. } => ("sample", 0.0),
    }
}

/// Two-layer (or deeper) alternating circuit for one ensemble sample.
pub fn ensemble_circuit(
    n: usize,
    mode: CircuitMode,
    depth: usize,
    base_seed: u64,
    sample: u64,
) -> CircuitSpec {
    let mut rng = seeded_rng(base_seed, sample);
    let shared: u64 = rng.random();
    let layers = (0..depth)
        .map(|layer_idx| {
            let parity = if layer_idx % 2 == 0 {
                LayerParity::Odd
            } else {
                LayerParity::Even
            };
            let gate_source = match mode {
                CircuitMode::SameHaar => GateSource::HaarShared { seed: shared },
                CircuitMode::DistinctHaar => GateSource::HaarShared { seed: rng.random() },
                CircuitMode::PerBond => GateSource::HaarPerBond { seed: rng.random() },
            };
            LayerSpec {
                parity,
                gate_source,
            }
        })
        .collect();
    CircuitSpec {
        num_qubits: n,
        layers,
    }
}

/// Executes a configuration into sweep rows, in deterministic input order.
pub fn execute(config: &RunConfig) -> anyhow::Result<Vec<SweepRecord>> {
    match config {
        RunConfig::Power { spec, optimizer } => {
            let (var, value) = power_sweep_var(spec);
            Ok(vec![measure_powers(spec, var, value, optimizer)?])
        }
        RunConfig::ScanLambda {
            kind,
            n,
            inner,
            grid,
            optimizer,
        } => {
            if *grid < 2 {
                bail!("lambda grid must have at least 2 points");
            }
            let points: Vec<f64> = (0..*grid)
                .map(|j| 2.0 * std::f64::consts::PI * j as f64 / (*grid - 1) as f64)
                .collect();
            points
                .par_iter()
                .map(|&lambda| {
                    let spec = match kind {
                        LambdaKind::NdEven => UnitarySpec::NdEven { n: *n, lambda },
                        LambdaKind::NdOdd => UnitarySpec::NdOdd {
                            n: *n,
                            lambda,
                            inner: *inner,
                        },
                    };
                    measure_powers(&spec, "lambda", lambda, optimizer)
                        .context("lambda sweep point failed")
                })
                .collect()
        }
        RunConfig::ScanTime {
            kind,
            n,
            grid,
            optimizer,
        } => {
            if *grid < 2 {
                bail!("time grid must have at least 2 points");
            }
            let points: Vec<f64> = (0..*grid)
                .map(|j| std::f64::consts::PI * j as f64 / (*grid - 1) as f64)
                .collect();
            points
                .par_iter()
                .map(|&t| {
                    let spec = match kind {
                        TimeKind::Dm => UnitarySpec::Dm { n: *n, t },
                        TimeKind::DmH => UnitarySpec::DmH { n: *n, t },
                    };
                    measure_powers(&spec, "t", t, optimizer).context("time sweep point failed")
                })
                .collect()
        }
        RunConfig::RandomScatter {
            kind,
            samples,
            optimizer,
        } => (0..*samples as u64)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&k| {
                let sample_seed: u64 = seeded_rng(optimizer.seed, k).random();
                let spec = match kind {
                    ScatterKind::Diag { n } => UnitarySpec::DiagRandom {
                        n: *n,
                        seed: sample_seed,
                    },
                    ScatterKind::Haar { dim } => UnitarySpec::Haar {
                        dim: *dim,
                        seed: sample_seed,
                    },
                };
                let mut record =
                    measure_powers(&spec, "sample", k as f64, optimizer).context("sample failed")?;
                record.seed = sample_seed;
                Ok(record)
            })
            .collect(),
        RunConfig::Circuit { circuit, optimizer } => Ok(vec![circuit_power_gap(circuit, optimizer)?]),
        RunConfig::CircuitEnsemble {
            n,
            mode,
            depth,
            samples,
            optimizer,
        } => (0..*samples as u64)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&k| {
                let circuit = ensemble_circuit(*n, *mode, *depth, optimizer.seed, k);
                let mut record = circuit_power_gap(&circuit, optimizer)
                    .context("circuit sample failed")?;
                record.sweep_value = k as f64;
                Ok(record)
            })
            .collect(),
    }
}
