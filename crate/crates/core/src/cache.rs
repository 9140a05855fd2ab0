//! On-disk cache of series tables and derived results.
//!
//! One JSON file per entry. Writes go to a temporary file that is renamed into
//! place, so readers never see a partial entry and need no lock.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{GSeriesTable, PolylogDiscTable, TableStore};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "REFINED_CK_CACHE_DIR";

/// Entries written by another version are ignored and removed by [`DiskCache::gc`].
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/1");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    GSeries,
    DiscTable,
    Dcw,
    Locus,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::GSeries => "g-series",
            EntryKind::DiscTable => "disc-table",
            EntryKind::Dcw => "dcw",
            EntryKind::Locus => "locus",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub kind: EntryKind,
    pub p: u64,
    pub params: String,
    /// Hash of `params`, also used in the file name.
    pub params_hash: String,
    pub payload: serde_json::Value,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub created: u64,
}

/// FNV-1a, stable across runs and platforms.
fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

impl CacheEntry {
    pub fn new<T: Serialize>(kind: EntryKind, p: u64, params: &str, value: &T) -> Result<Self> {
        let payload = serde_json::to_value(value).map_err(|e| Error::Cache(e.to_string()))?;
        let params_hash = format!("{:016x}", fnv1a(params));
        Ok(CacheEntry {
            key: entry_key(kind, p, params),
            kind,
            p,
            params: params.to_string(),
            params_hash,
            payload,
            version: CACHE_VERSION.to_string(),
            created: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        })
    }

    pub fn decode<T: DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone()).map_err(|e| Error::Cache(e.to_string()))
    }
}

fn entry_key(kind: EntryKind, p: u64, params: &str) -> String {
    format!("{kind}-p{p}-{:016x}", fnv1a(params))
}

/// Default directory: `$REFINED_CK_CACHE_DIR`, else `$XDG_DATA_HOME/refined-ck`,
/// else `~/.local/share/refined-ck`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_DATA_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(d).join("refined-ck");
    }
    let home = std::env::var_os("HOME").map_or_else(std::env::temp_dir, PathBuf::from);
    home.join(".local/share/refined-ck")
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(DiskCache { dir })
    }

    pub fn open_default() -> Result<Self> {
        Self::open(default_cache_dir())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Reads an entry; missing, corrupt, mismatched or stale entries read as `None`.
    pub fn get_entry(&self, kind: EntryKind, p: u64, params: &str) -> Option<CacheEntry> {
        let bytes = fs::read(self.path(&entry_key(kind, p, params))).ok()?;
        let e: CacheEntry = serde_json::from_slice(&bytes).ok()?;
        (e.version == CACHE_VERSION && e.kind == kind && e.p == p && e.params == params).then_some(e)
    }

    pub fn get<T: DeserializeOwned>(&self, kind: EntryKind, p: u64, params: &str) -> Option<T> {
        self.get_entry(kind, p, params)?.decode().ok()
    }

    pub fn put<T: Serialize>(&self, kind: EntryKind, p: u64, params: &str, value: &T) -> Result<()> {
        let entry = CacheEntry::new(kind, p, params, value)?;
        let bytes = serde_json::to_vec(&entry).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            entry.key,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", tmp.display()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(&bytes).map_err(io)?;
        f.sync_all().map_err(io)?;
        drop(f);
        fs::rename(&tmp, self.path(&entry.key)).map_err(io)
    }

    /// Removes leftover temporary files, unreadable entries, entries from other
    /// versions and, when `max_age_secs` is given, entries older than that.
    /// Returns the number of files removed.
    pub fn gc(&self, max_age_secs: Option<u64>) -> Result<usize> {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let rd = fs::read_dir(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        let mut removed = 0;
        for ent in rd.flatten() {
            let path = ent.path();
            let name = ent.file_name().to_string_lossy().into_owned();
            let stale = if name.ends_with(".tmp") {
                true
            } else if name.ends_with(".json") {
                match fs::read(&path).ok().and_then(|b| serde_json::from_slice::<CacheEntry>(&b).ok()) {
                    None => true,
                    Some(e) => {
                        e.version != CACHE_VERSION || max_age_secs.is_some_and(|m| now.saturating_sub(e.created) > m)
                    }
                }
            } else {
                false
            };
            if stale && fs::remove_file(&path).is_ok() {
                removed += 1;
            }
        }
        Ok(removed)
    }

    /// Number of `.json` entries currently stored.
    pub fn len(&self) -> usize {
        fs::read_dir(&self.dir).map_or(0, |rd| {
            rd.flatten()
                .filter(|e| e.file_name().to_string_lossy().ends_with(".json"))
                .count()
        })
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn g_params(depth: u32, order: i64) -> String {
    format!("depth={depth};order={order}")
}

fn disc_params(residue: u64, depth: u32, order: i64) -> String {
    format!("residue={residue};depth={depth};order={order}")
}

impl TableStore for DiskCache {
    fn load_g(&self, p: u64, depth: u32, order: i64) -> Option<GSeriesTable> {
        self.get(EntryKind::GSeries, p, &g_params(depth, order))
    }

    fn store_g(&self, t: &GSeriesTable) {
        // a failed write only costs a recomputation later
        let _ = self.put(EntryKind::GSeries, t.p, &g_params(t.depth, t.order), t);
    }

    fn load_disc(&self, p: u64, residue: u64, depth: u32, order: i64) -> Option<PolylogDiscTable> {
        self.get(EntryKind::DiscTable, p, &disc_params(residue, depth, order))
    }

    fn store_disc(&self, t: &PolylogDiscTable) {
        let _ = self.put(EntryKind::DiscTable, t.p, &disc_params(t.residue, t.depth, t.order), t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_roundtrip_and_gc() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache::open(dir.path()).unwrap();
        c.put(EntryKind::Dcw, 7, "q=19;order=10", &vec![1u64, 2, 3]).unwrap();
        assert_eq!(c.get::<Vec<u64>>(EntryKind::Dcw, 7, "q=19;order=10"), Some(vec![1, 2, 3]));
        assert_eq!(c.get::<Vec<u64>>(EntryKind::Dcw, 7, "q=19;order=11"), None);
        fs::write(dir.path().join("junk.json"), b"not json").unwrap();
        fs::write(dir.path().join(".x.tmp"), b"").unwrap();
        assert_eq!(c.gc(None).unwrap(), 2);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn version_mismatch_invalidates() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache::open(dir.path()).unwrap();
        c.put(EntryKind::Locus, 5, "x", &1u8).unwrap();
        let path = c.path(&entry_key(EntryKind::Locus, 5, "x"));
        let mut e: CacheEntry = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        e.version = "0.0.0/0".into();
        fs::write(&path, serde_json::to_vec(&e).unwrap()).unwrap();
        assert_eq!(c.get::<u8>(EntryKind::Locus, 5, "x"), None);
        assert_eq!(c.gc(None).unwrap(), 1);
    }
}
