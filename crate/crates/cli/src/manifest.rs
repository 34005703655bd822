use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// Provenance record written next to every data file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Fully resolved parameters, SI and natural units.
    pub parameters: serde_json::Value,
    pub version: String,
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch. The only field allowed to differ
    /// between runs that produce identical data.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}
