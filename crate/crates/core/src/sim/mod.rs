// SPDX-License-Identifier: Apache-2.0

//! Storage-cluster simulator and experiment driver.

mod cluster;
mod config;
mod experiment;

use std::path::{Path, PathBuf};

pub use cluster::{Cluster, ClusterRepair, Failure, FailureRecord, NodeRecord, StripeFile, SCHEMA_VERSION};
pub use config::{random_helpers, CodeFamily, HelperPolicy, SimConfig};
pub use experiment::{bench, trial_rng, verify, ExperimentRecord, TrialRow};

/// Environment variable that redirects every output file.
pub const OUT_DIR_ENV: &str = "AGREPAIR_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Core(#[from] crate::Error),

    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("invalid cluster state: {0}")]
    State(String),

    #[error("schema version mismatch: expected {expected}, found {found}")]
    Schema { expected: u32, found: u32 },

    #[error("nothing to repair: no node has failed")]
    NothingToRepair,

    #[error("csv: {0}")]
    Csv(String),
}

impl SimError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        SimError::Io { path: path.to_path_buf(), message: e.to_string() }
    }
}

impl From<csv::Error> for SimError {
    fn from(e: csv::Error) -> Self {
        SimError::Csv(e.to_string())
    }
}

/// Where a relative output path ends up: under `$AGREPAIR_OUT_DIR` when set.
pub fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}
