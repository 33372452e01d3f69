//! Command-line plumbing around `pwa-core`: file formats, seeded sampling,
//! the comparison and enumeration harness, and JSON-lines reports.

pub mod cli;
pub mod harness;
pub mod io;
pub mod report;
pub mod rng;

use std::path::Path;

use pwa_core::{gallery, Automaton};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] pwa_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("bound too large: {instances} instances, the limit is {limit}")]
    BoundTooLarge { instances: u128, limit: u128 },
}

impl LabError {
    /// Usage problems exit with 2, everything else is invalid input (3).
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Usage(_) | LabError::BoundTooLarge { .. } => 2,
            _ => 3,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, LabError> {
    std::fs::read_to_string(path).map_err(|source| LabError::Io { path: path.display().to_string(), source })
}

/// `gallery:NAME` names a built-in automaton; anything else is a JSON file.
pub fn load_automaton(arg: &str) -> Result<Automaton, LabError> {
    if let Some(name) = arg.strip_prefix("gallery:") {
        return gallery::by_name(name).ok_or_else(|| LabError::Usage(format!("no built-in automaton named {name:?}")));
    }
    io::parse_automaton(&read_file(Path::new(arg))?)
}
