//! On-disk report cache keyed by a hash of the check name, its parameters,
//! the schema version and the crate version. Entries are written to a
//! temporary file and renamed into place, so readers never see a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::report::{CheckReport, Params, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("no platform cache directory; pass --cache-dir")]
    NoDefault,
}

pub struct Cache {
    dir: PathBuf,
}

/// Platform cache path, e.g. `~/.cache/springer` on Linux.
pub fn default_dir() -> Result<PathBuf, CacheError> {
    dirs::cache_dir().map(|d| d.join("springer")).ok_or(CacheError::NoDefault)
}

pub fn key(check: &str, params: &Params) -> String {
    let canonical = serde_json::json!({
        "check": check,
        "params": params,
        "schema": SCHEMA_VERSION,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let digest = Sha256::digest(serde_json::to_vec(&canonical).expect("params serialize"));
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| CacheError::Io { path: dir.clone(), source })?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, check: &str, params: &Params) -> PathBuf {
        self.dir.join(format!("{check}-{}.json", key(check, params)))
    }

    /// Unreadable or stale entries count as misses.
    pub fn get(&self, check: &str, params: &Params) -> Option<CheckReport> {
        let bytes = fs::read(self.path(check, params)).ok()?;
        let report: CheckReport = serde_json::from_slice(&bytes).ok()?;
        (report.schema == SCHEMA_VERSION && report.check == check && &report.params == params).then_some(report)
    }

    /// Timings are not cached.
    pub fn put(&self, report: &CheckReport) -> Result<(), CacheError> {
        let mut report = report.clone();
        report.wall_ms = None;
        let path = self.path(&report.check, &report.params);
        let io = |source| CacheError::Io { path: path.clone(), source };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(&serde_json::to_vec(&report).expect("reports serialize")).map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn report(params: Params) -> CheckReport {
        CheckReport {
            schema: SCHEMA_VERSION,
            check: "roots".into(),
            params,
            order: None,
            status: Status::Pass,
            results: vec![],
            wall_ms: Some(5),
        }
    }

    #[test]
    fn round_trip_drops_timings() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let p = Params { cartan_type: Some("A2".into()), ..Params::default() };
        assert!(cache.get("roots", &p).is_none());
        cache.put(&report(p.clone())).unwrap();
        let back = cache.get("roots", &p).unwrap();
        assert_eq!(back.wall_ms, None);
        assert!(cache.get("roots", &Params::default()).is_none());
    }

    #[test]
    fn keys_separate_params() {
        let a = Params::default();
        let b = Params::default().with_flag("mode", "flag");
        assert_ne!(key("x", &a), key("x", &b));
        assert_ne!(key("x", &a), key("y", &a));
        assert_eq!(key("x", &a).len(), 64);
    }
}
