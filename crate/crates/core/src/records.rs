//! Line-delimited run log. Each line is one JSON [`RunRecord`]; searches
//! append a `search-level` record per finished edge count so that an
//! interrupted run can pick up where it stopped.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub outputs: Vec<String>,
    /// Wall-clock seconds.
    pub timing: f64,
    pub engine_version: String,
}

impl RunRecord {
    pub fn new(command: &str) -> RunRecord {
        RunRecord {
            command: command.to_string(),
            params: BTreeMap::new(),
            outputs: Vec::new(),
            timing: 0.0,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("run record serializes")
    }

    pub fn from_line(line: &str) -> Result<RunRecord> {
        serde_json::from_str(line).map_err(|e| Error::Format(e.to_string()))
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn append(path: &Path, rec: &RunRecord) -> Result<()> {
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io_err)?;
    writeln!(f, "{}", rec.to_line()).map_err(io_err)
}

/// Reads every record; a missing file is an empty log.
pub fn read_all(path: &Path) -> Result<Vec<RunRecord>> {
    let f = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(e)),
    };
    BufReader::new(f)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| RunRecord::from_line(&l.map_err(io_err)?))
        .collect()
}

/// Edge counts already shown empty for the search identified by `key`
/// (matching `search-level` records whose params contain every key pair).
pub fn completed_empty_levels(records: &[RunRecord], key: &BTreeMap<String, String>) -> Vec<usize> {
    let mut out: Vec<usize> = records
        .iter()
        .filter(|r| r.command == "search-level")
        .filter(|r| key.iter().all(|(k, v)| r.params.get(k) == Some(v)))
        .filter(|r| r.params.get("found").map(String::as_str) == Some("0"))
        .filter_map(|r| r.params.get("m")?.parse().ok())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
