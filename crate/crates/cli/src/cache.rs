//! Content-addressed result cache keyed by the program version and the
//! normalized run configuration.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::{Command, Common};
use crate::run::Outcome;

pub fn key(cmd: &Command, common: &Common) -> String {
    let config = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": cmd,
        "common": common,
    });
    hex::encode(Sha256::digest(config.to_string().as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct Meta {
    positive: Option<bool>,
    failures: Option<String>,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf() }
    }

    fn paths(&self, key: &str) -> (PathBuf, PathBuf) {
        (self.dir.join(format!("{key}.out")), self.dir.join(format!("{key}.meta.json")))
    }

    /// A cached outcome; unreadable or partial entries count as misses.
    pub fn load(&self, key: &str) -> Option<Outcome> {
        let (out, meta) = self.paths(key);
        let meta: Meta = serde_json::from_slice(&fs::read(meta).ok()?).ok()?;
        let bytes = fs::read(out).ok()?;
        Some(Outcome { bytes, positive: meta.positive, failures: meta.failures })
    }

    pub fn store(&self, key: &str, outcome: &Outcome) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let (out, meta) = self.paths(key);
        let m = serde_json::to_vec(&Meta { positive: outcome.positive, failures: outcome.failures.clone() }).map_err(std::io::Error::other)?;
        write_atomic(&out, &outcome.bytes)?;
        // the metadata marks the entry complete, so it goes last
        write_atomic(&meta, &m)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(tmp, path)
}
