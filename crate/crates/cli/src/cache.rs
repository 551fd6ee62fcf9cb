//! On-disk cache of invariant results, one JSON file per key.

use crate::report::{WitnessRecord, TOOL_VERSION};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const CACHE_DIR_ENV: &str = "MAXDIM_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CacheEntry {
    pub key: String,
    pub tool_version: String,
    pub budget: u64,
    /// Canonical description and requested invariants the key was made from.
    pub material: String,
    pub values: BTreeMap<String, i64>,
    pub witness: Vec<WitnessRecord>,
}

/// Hex SHA-256 of the key material together with tool version and budget.
pub fn cache_key(material: &str, budget: u64) -> String {
    let mut h = Sha256::new();
    h.update(TOOL_VERSION.as_bytes());
    h.update([0]);
    h.update(budget.to_le_bytes());
    h.update(material.as_bytes());
    hex::encode(h.finalize())
}

pub fn decode_cache_entry(bytes: &[u8]) -> Result<CacheEntry, String> {
    let e: CacheEntry = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    if e.key.len() != 64 || !e.key.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(format!("malformed key `{}`", e.key));
    }
    Ok(e)
}

pub fn encode_cache_entry(e: &CacheEntry) -> String {
    serde_json::to_string(e).expect("cache entries serialize")
}

/// A cache directory, or nothing when caching is off. Failures never abort
/// the caller; they are reported on the warning stream.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// A matching entry, or `None` when absent, stale or unreadable.
    pub fn lookup(&self, material: &str, budget: u64, warn: &mut dyn Write) -> Option<CacheEntry> {
        let key = cache_key(material, budget);
        let path = self.path(&key)?;
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                let _ = writeln!(warn, "warning: cannot read cache entry {}: {e}", path.display());
                return None;
            }
        };
        match decode_cache_entry(&bytes) {
            Ok(e) if e.key == key && e.tool_version == TOOL_VERSION && e.budget == budget && e.material == material => {
                Some(e)
            }
            Ok(_) => None,
            Err(msg) => {
                let _ = writeln!(
                    warn,
                    "warning: ignoring corrupted cache entry {}: {msg}; recomputing",
                    path.display()
                );
                None
            }
        }
    }

    /// Writes through a temporary file in the same directory and renames it
    /// into place, so readers never see a partial entry.
    pub fn store(
        &self,
        material: &str,
        budget: u64,
        values: BTreeMap<String, i64>,
        witness: Vec<WitnessRecord>,
        warn: &mut dyn Write,
    ) {
        let key = cache_key(material, budget);
        let Some(path) = self.path(&key) else {
            return;
        };
        let entry = CacheEntry {
            key,
            tool_version: TOOL_VERSION.into(),
            budget,
            material: material.into(),
            values,
            witness,
        };
        let dir = self.dir.as_ref().expect("path implies dir");
        let result = std::fs::create_dir_all(dir)
            .and_then(|_| tempfile::NamedTempFile::new_in(dir))
            .and_then(|mut tmp| {
                tmp.write_all(encode_cache_entry(&entry).as_bytes())?;
                tmp.persist(&path).map_err(|e| e.error)?;
                Ok(())
            });
        if let Err(e) = result {
            let _ = writeln!(warn, "warning: cannot write cache entry {}: {e}", path.display());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let mut warn = Vec::new();
        assert!(cache.lookup("x", 5, &mut warn).is_none());
        let values: BTreeMap<String, i64> = [("m".to_string(), 2)].into();
        cache.store("x", 5, values.clone(), vec![], &mut warn);
        assert_eq!(cache.lookup("x", 5, &mut warn).unwrap().values, values);
        assert!(cache.lookup("x", 6, &mut warn).is_none());
        assert!(cache.lookup("y", 5, &mut warn).is_none());
        assert!(warn.is_empty());
    }

    #[test]
    fn corrupted_entries_warn() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let key = cache_key("x", 5);
        std::fs::write(dir.path().join(format!("{key}.json")), b"{ not json").unwrap();
        let mut warn = Vec::new();
        assert!(cache.lookup("x", 5, &mut warn).is_none());
        assert!(String::from_utf8(warn).unwrap().contains("corrupted"));
    }

    #[test]
    fn keys_are_hex_digests() {
        let k = cache_key("family: cyclic 6", 10);
        assert_eq!(k.len(), 64);
        assert_ne!(k, cache_key("family: cyclic 6", 11));
        assert!(decode_cache_entry(br#"{"key":"zz","toolVersion":"0","budget":1,"material":"","values":{},"witness":[]}"#).is_err());
    }
}
