//! On-disk result cache keyed by a content hash.

use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "HALLCOUNT_CACHE_DIR";

/// Bumped whenever the output of a cached command may change.
pub const CODE_VERSION: &str = concat!("hallcount-", env!("CARGO_PKG_VERSION"), "-r1");

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `$HALLCOUNT_CACHE_DIR`, else `~/.cache/hallcount`.
    pub fn from_env() -> Option<Cache> {
        let dir = match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => PathBuf::from(std::env::var_os("HOME")?).join(".cache").join("hallcount"),
        };
        Some(Cache { dir })
    }

    /// Hash of the canonical serialization of `(code version, command, quiver, params)`.
    pub fn key(command: &str, quiver: &str, params: &Value) -> String {
        // serde_json maps are ordered by key, so this rendering is canonical
        let doc = json!({ "version": CODE_VERSION, "command": command, "quiver": quiver, "params": params });
        sha256_hex(doc.to_string().as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored report, or `None` when missing or failing its integrity check.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        if entry.get("key")?.as_str()? != key {
            return None;
        }
        let report = entry.get("report")?;
        if entry.get("checksum")?.as_str()? != sha256_hex(report.to_string().as_bytes()) {
            return None;
        }
        Some(report.clone())
    }

    /// Best effort; a failed write only costs a recomputation later.
    pub fn put(&self, key: &str, report: &Value) {
        let entry = json!({
            "key": key,
            "checksum": sha256_hex(report.to_string().as_bytes()),
            "report": report,
        });
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        if fs::write(&tmp, entry.to_string()).is_ok() && fs::rename(&tmp, self.path(key)).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
