//! Content-addressed disk cache: one JSON file per entry, named by the
//! SHA-256 of the canonical key.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub value: Value,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// Canonical key: tool version, command and parameters in a fixed order.
pub fn cache_key(command: &str, params: &[(&str, String)]) -> String {
    let mut key = format!("grlimit/{}/{command}", env!("CARGO_PKG_VERSION"));
    for (name, value) in params {
        key.push_str(&format!("/{name}={value}"));
    }
    key
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// A stored entry for `key`; unreadable or foreign files count as misses.
    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry)
    }

    pub fn put(&self, key: &str, value: &Value) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            key: key.to_string(),
            value: value.clone(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        };
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
        fs::rename(tmp, path)
    }
}
