//! One row of a parameter sweep: the unitary identity, both powers, their
//! gap, the witness points and optimizer diagnostics.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::optimizer::{disentangling_power, entangling_power, FSPoint, OptimizerConfig};
use crate::zoo::UnitarySpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub unitary_spec: UnitarySpec,
    pub sweep_var: String,
    pub sweep_value: f64,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub gap: f64,
    #[serde(rename = "argmax_E")]
    pub argmax_e: FSPoint,
    #[serde(rename = "argmax_D")]
    pub argmax_d: FSPoint,
    pub converged_e: bool,
    pub converged_d: bool,
    pub evals_e: usize,
    pub evals_d: usize,
    pub seed: u64,
    pub wall_ms: u64,
}

/// Builds the unitary, computes both powers under the same configuration and
/// assembles the record. `wall_ms` is measured wall time and is the one field
/// not reproducible across runs.
pub fn measure_powers(
    spec: &UnitarySpec,
    sweep_var: &str,
    sweep_value: f64,
    cfg: &OptimizerConfig,
) -> Result<SweepRecord> {
    let start = Instant::now();
    let unitary = spec.build()?;
    let e = entangling_power(&unitary, cfg)?;
    let d = disentangling_power(&unitary, cfg)?;
    Ok(SweepRecord {
        unitary_spec: spec.clone(),
        sweep_var: sweep_var.to_string(),
        sweep_value,
        e: e.value,
        d: d.value,
        gap: (e.value - d.value).abs(),
        argmax_e: e.argmax,
        argmax_d: d.argmax,
        converged_e: e.converged,
        converged_d: d.converged,
        evals_e: e.evaluations,
        evals_d: d.evaluations,
        seed: cfg.seed,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}
