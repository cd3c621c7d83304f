//! On-disk checkpoint and result files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SearchError, SearchStats, UnitSelector};
use crate::search::Prunes;
use crate::sequence::CrossingSequence;

pub const FORMAT_VERSION: u32 = 1;

/// The parts of a configuration that determine the work units and results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: u32,
    pub prefix: CrossingSequence,
    pub split_depth: usize,
    pub unit_selector: Option<UnitSelector>,
    pub dedup: bool,
    pub prunes: Prunes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub n: u32,
    pub valid_count: u64,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub complete: bool,
    pub config: ConfigEcho,
    pub completed_units: Vec<CrossingSequence>,
    pub stats: SearchStats,
    pub results: Vec<CrossingSequence>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint, SearchError> {
        let text = fs::read_to_string(path)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint(format!("{}: {e}", path.display())))?;
        let version = value.get("version").and_then(|v| v.as_u64());
        if version != Some(FORMAT_VERSION as u64) {
            return Err(SearchError::Checkpoint(format!(
                "{}: unsupported checkpoint version {}, expected {FORMAT_VERSION}",
                path.display(),
                version.map_or("missing".to_string(), |v| v.to_string())
            )));
        }
        serde_json::from_value(value).map_err(|e| SearchError::Checkpoint(format!("{}: {e}", path.display())))
    }

    pub fn store(&self, path: &Path) -> io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        write_atomic(path, text.as_bytes())
    }
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub n: u32,
    pub valid_count: u64,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub complete: bool,
    pub version: u32,
}

/// Writes one free half per line, sorted, plus the `<path>.json` metadata.
pub fn write_results(path: &Path, n: u32, results: &[CrossingSequence], stats: &SearchStats) -> io::Result<()> {
    let mut sorted = results.to_vec();
    sorted.sort();
    let mut text = String::new();
    for alpha in &sorted {
        text.push_str(&alpha.to_string());
        text.push('\n');
    }
    write_atomic(path, text.as_bytes())?;
    let sidecar = Sidecar {
        n,
        valid_count: stats.valid_count,
        nodes: stats.nodes,
        elapsed_ms: stats.elapsed_ms,
        complete: stats.complete,
        version: FORMAT_VERSION,
    };
    let mut meta = path.as_os_str().to_owned();
    meta.push(".json");
    write_atomic(Path::new(&meta), serde_json::to_string_pretty(&sidecar).expect("sidecar serializes").as_bytes())
}
