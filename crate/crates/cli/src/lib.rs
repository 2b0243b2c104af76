//! Library side of the `entpower` binary: runnable experiment configurations,
//! deterministic execution, CSV/JSON output and run manifests.
//!
//! Everything the binary writes is reproducible: a data file is a pure
//! function of its `RunConfig` (modulo the measured `wall_ms` column), and
//! every file ships with a manifest embedding that config.

pub mod manifest;
pub mod outputs;
pub mod runs;

pub use manifest::{config_hash, RunManifest};
pub use outputs::{csv_string, parse_amplitude_file, CSV_HEADER};
pub use runs::{execute, CircuitMode, LambdaKind, RunConfig, ScatterKind, TimeKind};
