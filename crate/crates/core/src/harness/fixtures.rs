//! Pinned regression values: a JSON snapshot per key, written on first use
//! and compared on every later run.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value as Json;
use sha2::{Digest, Sha256};

/// Environment variable naming the fixture directory.
pub const FIXTURES_ENV: &str = "EUMR_FIXTURES";

/// `$EUMR_FIXTURES`, falling back to the `fixtures` directory of this crate.
pub fn default_fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

/// Hex SHA-256 of the compact serialization.
pub fn fixture_hash(value: &Json) -> String {
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixtureOutcome {
    Created,
    Matched,
    Mismatch { pinned: Json },
}

#[derive(Debug, Clone)]
pub struct FixtureStore {
    dir: PathBuf,
}

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> FixtureStore {
        FixtureStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Compares `value` with the snapshot under `key`, creating it if absent.
    pub fn check(&self, key: &str, value: &Json) -> std::io::Result<FixtureOutcome> {
        let path = self.path(key);
        match fs::read_to_string(&path) {
            Ok(text) => {
                let pinned: Json = serde_json::from_str(&text)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
                let stored = pinned.get("value").cloned().unwrap_or(Json::Null);
                if stored == *value {
                    Ok(FixtureOutcome::Matched)
                } else {
                    Ok(FixtureOutcome::Mismatch { pinned: stored })
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                fs::create_dir_all(&self.dir)?;
                let doc = serde_json::json!({ "key": key, "sha256": fixture_hash(value), "value": value });
                let text = serde_json::to_string_pretty(&doc).expect("json serializes");
                fs::write(&path, text + "\n")?;
                Ok(FixtureOutcome::Created)
            }
            Err(e) => Err(e),
        }
    }
}
