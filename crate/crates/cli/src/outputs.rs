//! CSV serialization of sweep rows and the amplitude file format.
//!
//! The CSV schema is stable: `sweep_var, value, E, D, gap, converged_E,
//! converged_D, evals_E, evals_D, seed, wall_ms`. Floats print in shortest
//! round-trip form, so data columns are byte-reproducible; `wall_ms` is a
//! wall-clock measurement and is the one non-reproducible column.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use entpower::sweep::SweepRecord;
use entpower::tensor::{CVector, PureState};
use entpower::C64;

pub const CSV_HEADER: &str =
    "sweep_var,value,E,D,gap,converged_E,converged_D,evals_E,evals_D,seed,wall_ms";

/// Renders rows under the stable schema.
pub fn csv_string(records: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.sweep_var,
            r.sweep_value,
            r.e,
            r.d,
            r.gap,
            r.converged_e,
            r.converged_d,
            r.evals_e,
            r.evals_d,
            r.seed,
            r.wall_ms
        ));
    }
    out
}

pub fn write_csv(path: &Path, records: &[SweepRecord]) -> anyhow::Result<()> {
    fs::write(path, csv_string(records))
        .with_context(|| format!("writing {}", path.display()))
}

/// Reads the text amplitude format: one `re im` pair per line, length `2^N`.
/// Norms off by more than `1e-6` are rejected; smaller deviations are
/// renormalized.
pub fn parse_amplitude_file(path: &Path) -> anyhow::Result<PureState> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading amplitude file {}", path.display()))?;
    let mut amps: Vec<C64> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let re: f64 = parts
            .next()
            .context("missing real part")?
            .parse()
            .with_context(|| format!("line {}: bad real part", lineno + 1))?;
        let im: f64 = parts
            .next()
            .context("missing imaginary part")?
            .parse()
            .with_context(|| format!("line {}: bad imaginary part", lineno + 1))?;
        if parts.next().is_some() {
            bail!("line {}: expected exactly two fields", lineno + 1);
        }
        amps.push(C64::new(re, im));
    }
    let len = amps.len();
    if len < 2 || !len.is_power_of_two() {
        bail!("amplitude count {len} is not a power of two >= 2");
    }
    let num_qubits = len.trailing_zeros() as usize;
    let mut vector = CVector::from_vec(amps);
    let norm = vector.norm();
    if (norm - 1.0).abs() > 1e-6 {
        bail!("state is not normalized: |norm - 1| = {:.3e}", (norm - 1.0).abs());
    }
    vector /= C64::new(norm, 0.0);
    PureState::new(num_qubits, vector).context("building state")
}
