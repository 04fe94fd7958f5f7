use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One cached operation result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub group: String,
    pub operation: String,
    pub params: Value,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub value: Value,
}

/// Content-addressed store: one JSON file per entry, named by its key.
#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
}

pub fn cache_key(group_hash: &str, operation: &str, params: &Value) -> String {
    let mut h = Sha256::new();
    for part in [group_hash, operation, &params.to_string(), TOOL_VERSION] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(Cache { dir, hits: AtomicU64::new(0), misses: AtomicU64::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key && entry.version == TOOL_VERSION).then_some(entry)
    }

    /// Writes to a temporary sibling, then renames into place.
    pub fn put(&self, entry: &CacheEntry) -> Result<()> {
        let path = self.path(&entry.key);
        let parent = path.parent().unwrap();
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        static SEQ: AtomicU64 = AtomicU64::new(0);
        let tmp = parent.join(format!(
            ".{}.{}.{}.tmp",
            entry.key,
            std::process::id(),
            SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        f.write_all(serde_json::to_string(entry)?.as_bytes()).map_err(|e| Error::io(&tmp, e))?;
        f.sync_all().map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))
    }

    /// Cached value for `(group, operation, params)`, computing it on a miss.
    pub fn get_or_compute(
        &self,
        group_hash: &str,
        operation: &str,
        params: Value,
        compute: impl FnOnce() -> Result<Value>,
    ) -> Result<Value> {
        let key = cache_key(group_hash, operation, &params);
        if let Some(entry) = self.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(entry.value);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = compute()?;
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        self.put(&CacheEntry {
            key,
            group: group_hash.to_string(),
            operation: operation.to_string(),
            params,
            version: TOOL_VERSION.to_string(),
            timestamp,
            value: value.clone(),
        })?;
        Ok(value)
    }

    /// `(hits, misses)` so far.
    pub fn stats(&self) -> (u64, u64) {
        (self.hits.load(Ordering::Relaxed), self.misses.load(Ordering::Relaxed))
    }
}

/// Runs `compute` through the cache when one is configured.
pub fn cached(
    cache: Option<&Cache>,
    group_hash: &str,
    operation: &str,
    params: Value,
    compute: impl FnOnce() -> Result<Value>,
) -> Result<Value> {
    match cache {
        Some(c) => c.get_or_compute(group_hash, operation, params, compute),
        None => compute(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hit_reproduces_value() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let v = json!({"b": [1, "2"], "a": null});
        let first = cache.get_or_compute("h", "op", json!({"n": 1}), || Ok(v.clone())).unwrap();
        let second = cache.get_or_compute("h", "op", json!({"n": 1}), || panic!("recomputed")).unwrap();
        assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
        assert_eq!(cache.stats(), (1, 1));
        assert_ne!(cache_key("h", "op", &json!({"n": 1})), cache_key("h", "op", &json!({"n": 2})));
        assert_ne!(cache_key("ho", "p", &json!(null)), cache_key("h", "op", &json!(null)));
    }

    #[test]
    fn corrupt_entries_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = cache_key("h", "op", &json!(null));
        let path = cache.path(&key);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, "{not json").unwrap();
        let v = cache.get_or_compute("h", "op", json!(null), || Ok(json!(3))).unwrap();
        assert_eq!(v, json!(3));
        assert_eq!(cache.get(&key).unwrap().value, json!(3));
    }
}
