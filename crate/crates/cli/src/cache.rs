//! On-disk cache of computed tables. One JSON file per key, written by
//! rename so readers never see a partial entry. Entries whose digest does not
//! match their payload are moved to `quarantine/` and recomputed.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENV_CACHE_DIR: &str = "AFFINE_FK_CACHE_DIR";
const QUARANTINE: &str = "quarantine";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub n: usize,
    pub kind: String,
    pub degree: usize,
}

impl CacheKey {
    pub fn new(n: usize, kind: &str, degree: usize) -> Self {
        CacheKey {
            n,
            kind: kind.to_string(),
            degree,
        }
    }

    fn file_name(&self) -> String {
        format!("{}-n{}-d{}.json", self.kind, self.n, self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: CacheKey,
    pub payload: Value,
    pub digest: String,
}

impl CacheEntry {
    pub fn new(key: CacheKey, payload: Value) -> Self {
        let digest = digest(&payload);
        CacheEntry {
            version: SCHEMA_VERSION,
            key,
            payload,
            digest,
        }
    }

    pub fn is_intact(&self) -> bool {
        digest(&self.payload) == self.digest
    }
}

/// Hex SHA-256 of the compact JSON encoding. Object keys serialize sorted,
/// so equal values always hash equally.
pub fn digest(payload: &Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("JSON values always serialize");
    hex::encode(Sha256::digest(&bytes))
}

#[derive(Debug, PartialEq)]
pub enum Lookup {
    Hit(CacheEntry),
    Miss,
    /// Written by another schema version; treated as a miss.
    Stale(u32),
    /// Unreadable or tampered; moved to the given path.
    Quarantined(PathBuf),
}

pub struct Cache {
    dir: PathBuf,
    locks: Mutex<HashMap<CacheKey, Arc<Mutex<()>>>>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
        Ok(Cache {
            dir,
            locks: Mutex::new(HashMap::new()),
        })
    }

    /// The directory from `--cache-dir`, falling back to the environment.
    pub fn from_flag(flag: Option<&Path>) -> Result<Option<Self>> {
        let dir = match flag {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(ENV_CACHE_DIR).map(PathBuf::from),
        };
        dir.map(Cache::open).transpose()
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn store(&self, entry: &CacheEntry) -> Result<()> {
        let target = self.path(&entry.key);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            entry.key.file_name(),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let bytes = serde_json::to_vec_pretty(entry)?;
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&bytes)?;
            f.sync_all()
        };
        if let Err(e) = write() {
            let _ = fs::remove_file(&tmp);
            return Err(HarnessError::io(&tmp, e));
        }
        fs::rename(&tmp, &target).map_err(|e| HarnessError::io(&target, e))
    }

    pub fn load(&self, key: &CacheKey) -> Result<Lookup> {
        let path = self.path(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Lookup::Miss),
            Err(e) => return Err(HarnessError::io(&path, e)),
        };
        let entry: CacheEntry = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(_) => return self.quarantine(&path).map(Lookup::Quarantined),
        };
        if entry.version != SCHEMA_VERSION {
            return Ok(Lookup::Stale(entry.version));
        }
        if entry.key != *key || !entry.is_intact() {
            return self.quarantine(&path).map(Lookup::Quarantined);
        }
        Ok(Lookup::Hit(entry))
    }

    /// The cached payload for `key`, computing and storing it on a miss.
    /// Concurrent callers for the same key wait for a single writer.
    pub fn get_or_compute(&self, key: &CacheKey, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        let lock = {
            let mut locks = self.locks.lock().expect("cache lock map poisoned");
            locks.entry(key.clone()).or_default().clone()
        };
        let _guard = lock.lock().expect("cache key lock poisoned");
        if let Lookup::Hit(entry) = self.load(key)? {
            return Ok(entry.payload);
        }
        let payload = compute()?;
        self.store(&CacheEntry::new(key.clone(), payload.clone()))?;
        Ok(payload)
    }

    /// Every entry file in the cache directory, sorted by name.
    pub fn entries(&self) -> Result<Vec<PathBuf>> {
        let read = fs::read_dir(&self.dir).map_err(|e| HarnessError::io(&self.dir, e))?;
        let mut out = Vec::new();
        for item in read {
            let path = item.map_err(|e| HarnessError::io(&self.dir, e))?.path();
            let is_entry = path.extension().is_some_and(|x| x == "json")
                && !path.file_name().is_some_and(|f| f.to_string_lossy().starts_with('.'));
            if path.is_file() && is_entry {
                out.push(path);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Validates every entry, quarantining the corrupt ones.
    pub fn check(&self) -> Result<Vec<(PathBuf, Lookup)>> {
        let mut out = Vec::new();
        for path in self.entries()? {
            let bytes = fs::read(&path).map_err(|e| HarnessError::io(&path, e))?;
            let status = match serde_json::from_slice::<CacheEntry>(&bytes) {
                Ok(entry) if entry.version != SCHEMA_VERSION => Lookup::Stale(entry.version),
                Ok(entry) if entry.is_intact() && self.path(&entry.key) == path => Lookup::Hit(entry),
                _ => Lookup::Quarantined(self.quarantine(&path)?),
            };
            out.push((path, status));
        }
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize> {
        let entries = self.entries()?;
        for path in &entries {
            fs::remove_file(path).map_err(|e| HarnessError::io(path, e))?;
        }
        Ok(entries.len())
    }

    fn quarantine(&self, path: &Path) -> Result<PathBuf> {
        let qdir = self.dir.join(QUARANTINE);
        fs::create_dir_all(&qdir).map_err(|e| HarnessError::io(&qdir, e))?;
        let name = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let mut i = 0;
        let target = loop {
            let candidate = qdir.join(format!("{name}.{i}"));
            if !candidate.exists() {
                break candidate;
            }
            i += 1;
        };
        fs::rename(path, &target).map_err(|e| HarnessError::io(path, e))?;
        Ok(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_ignores_insertion_order() {
        let a: Value = serde_json::from_str(r#"{"b": 1, "a": [1, 2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"a": [1, 2], "b": 1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_ne!(digest(&a), digest(&json!({"a": [2, 1], "b": 1})));
        assert_eq!(digest(&a).len(), 64);
    }

    #[test]
    fn wrong_key_is_quarantined() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let k1 = CacheKey::new(3, "schubert", 2);
        let k2 = CacheKey::new(3, "schubert", 3);
        let entry = CacheEntry::new(k1, json!([1]));
        let bytes = serde_json::to_vec(&entry).unwrap();
        std::fs::write(cache.path(&k2), bytes).unwrap();
        assert!(matches!(cache.load(&k2).unwrap(), Lookup::Quarantined(_)));
        assert_eq!(cache.load(&k2).unwrap(), Lookup::Miss);
    }
}
