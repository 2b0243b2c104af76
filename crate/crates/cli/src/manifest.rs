//! Run manifests: enough metadata next to every output file to reproduce it
//! bit-for-bit (wall-clock timings excepted).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::runs::RunConfig;
use entpower::zoo::PRNG_ALGORITHM;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub prng_algorithm: String,
    /// SHA-256 of the canonical (serde_json) serialization of `config`.
    pub config_hash: String,
    pub started_at: String,
    pub finished_at: String,
    pub host: String,
    pub config: RunConfig,
}

/// Canonical hash of a configuration.
pub fn config_hash(config: &RunConfig) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(config: RunConfig, started_at: String, finished_at: String) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            prng_algorithm: PRNG_ALGORITHM.to_string(),
            config_hash: config_hash(&config),
            started_at,
            finished_at,
            host: format!("{}-{}", std::env::consts::OS, std::env::consts::ARCH),
            config,
        }
    }

    /// Recomputes the hash from the embedded config and compares.
    pub fn hash_is_consistent(&self) -> bool {
        config_hash(&self.config) == self.config_hash
    }
}
