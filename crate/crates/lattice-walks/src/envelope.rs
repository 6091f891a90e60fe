//! JSON result envelope for the CLI, plus an append-only JSONL result
//! cache. Counts are serialized as decimal strings so arbitrary-precision
//! values survive the round trip through JSON readers that coerce
//! numbers to f64.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Environment variable naming the JSONL cache file. Unset means no
/// caching.
pub const CACHE_ENV: &str = "LATTICE_WALKS_CACHE";

/// Envelope wrapping every JSON result the CLI emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub command: String,
    /// Flat string map; keys sorted so serialization is deterministic.
    pub params: BTreeMap<String, String>,
    /// Seconds since the Unix epoch at emission time. Ignored by cache
    /// lookups.
    pub timestamp: u64,
    pub version: String,
    pub payload: Value,
}

impl ResultEnvelope {
    pub fn new(command: &str, params: BTreeMap<String, String>, payload: Value) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ResultEnvelope {
            command: command.to_string(),
            params,
            timestamp,
            version: env!("CARGO_PKG_VERSION").to_string(),
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("envelope serialization cannot fail")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Two envelopes describe the same computation if command, params,
    /// and version all match.
    pub fn same_key(&self, other: &ResultEnvelope) -> bool {
        self.command == other.command
            && self.params == other.params
            && self.version == other.version
    }
}

/// Serializes an area table as `area -> decimal count`, keys in
/// ascending area order.
pub fn counts_to_json(counts: &BTreeMap<i64, BigInt>) -> Value {
    let map: serde_json::Map<String, Value> = counts
        .iter()
        .map(|(a, c)| (a.to_string(), Value::String(c.to_string())))
        .collect();
    Value::Object(map)
}

/// Inverse of [`counts_to_json`].
pub fn counts_from_json(value: &Value) -> Option<BTreeMap<i64, BigInt>> {
    let map = value.as_object()?;
    let mut counts = BTreeMap::new();
    for (k, v) in map {
        let area: i64 = k.parse().ok()?;
        let count: BigInt = v.as_str()?.parse().ok()?;
        counts.insert(area, count);
    }
    Some(counts)
}

/// Append-only JSONL cache. Lookups scan the whole file and return the
/// last entry whose (command, params, version) key matches, so newer
/// results shadow older ones without rewriting the file.
#[derive(Debug, Clone)]
pub struct ResultCache {
    path: PathBuf,
}

impl ResultCache {
    pub fn at(path: impl AsRef<Path>) -> Self {
        ResultCache {
            path: path.as_ref().to_path_buf(),
        }
    }

    /// Cache configured from [`CACHE_ENV`], if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(ResultCache::at)
    }

    pub fn append(&self, envelope: &ResultEnvelope) -> std::io::Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{}", envelope.to_json())
    }

    pub fn lookup(&self, key: &ResultEnvelope) -> Option<ResultEnvelope> {
        let file = std::fs::File::open(&self.path).ok()?;
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let line = line.ok()?;
            if line.trim().is_empty() {
                continue;
            }
            // tolerate foreign or corrupt lines: the cache is advisory
            if let Ok(entry) = ResultEnvelope::from_json(&line) {
                if entry.same_key(key) {
                    found = Some(entry);
                }
            }
        }
        found
    }
}
