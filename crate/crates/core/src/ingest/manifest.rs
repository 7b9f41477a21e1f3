//! Named dataset catalogue shipped with the crate.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::TimeUnit;
use crate::ingest::parse::{EdgeListFormat, LoadOptions};

const BUILTIN: &str = include_str!("../../data/manifest.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub datasets: Vec<DatasetEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub name: String,
    #[serde(default)]
    pub title: Option<String>,
    #[serde(default)]
    pub group: Option<String>,
    pub url: String,
    /// Digest of the downloaded file. `None` records the digest on first
    /// download and checks later cache hits against it.
    #[serde(default)]
    pub sha256: Option<String>,
    /// File to extract when the download is a zip archive; matched against
    /// the final path component of each archive member.
    #[serde(default)]
    pub archive_member: Option<String>,
    #[serde(default)]
    pub format: EdgeListFormat,
    #[serde(default)]
    pub timestamp_unit: TimeUnit,
    #[serde(default)]
    pub expected: Option<ExpectedCounts>,
    #[serde(default)]
    pub reference: Option<ReferenceIndices>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCounts {
    pub num_nodes: usize,
    pub num_events: usize,
    pub num_unique_edges: usize,
    #[serde(default)]
    pub num_unique_steps: Option<usize>,
}

/// Published index values, kept for comparison only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceIndices {
    pub reoccurrence: f64,
    pub surprise: f64,
    pub node_activity: f64,
    pub novelty: f64,
    pub discretization: String,
}

impl DatasetEntry {
    pub fn load_options(&self) -> LoadOptions {
        LoadOptions {
            format: self.format.clone(),
            unit: self.timestamp_unit,
            undirected: false,
        }
    }
}

impl DatasetManifest {
    /// The embedded manifest.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("embedded manifest is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: DatasetManifest =
            serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for d in &self.datasets {
            let valid_name = !d.name.is_empty()
                && d
                    .name
                    .bytes()
                    .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-' || b == b'_');
            if !valid_name {
                return Err(Error::Manifest(format!(
                    "dataset name '{}' must be lowercase ASCII letters, digits, '-' or '_'",
                    d.name
                )));
            }
            if !seen.insert(d.name.as_str()) {
                return Err(Error::Manifest(format!("duplicate dataset name '{}'", d.name)));
            }
            if let Some(sha) = &d.sha256 {
                if sha.len() != 64 || !sha.bytes().all(|b| b.is_ascii_hexdigit()) {
                    return Err(Error::Manifest(format!(
                        "dataset '{}': sha256 must be 64 hex digits",
                        d.name
                    )));
                }
            }
            d.format
                .validate()
                .map_err(|e| Error::Manifest(format!("dataset '{}': {e}", d.name)))?;
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&DatasetEntry> {
        self.datasets
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::UnknownDataset(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.datasets.iter().map(|d| d.name.as_str())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// The embedded manifest.
pub fn list_datasets() -> DatasetManifest {
    DatasetManifest::builtin()
}
