//! On-disk report cache keyed by a hash of the resolved query.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::report::{Query, Report, SCHEMA};

/// Stable key: SHA-256 of the schema tag and the canonical query JSON.
pub fn cache_key(query: &Query) -> String {
    let canonical = serde_json::to_string(query).expect("queries serialize");
    let mut h = Sha256::new();
    h.update(SCHEMA.as_bytes());
    h.update(b"\n");
    h.update(canonical.as_bytes());
    hex::encode(h.finalize())
}

pub enum Lookup {
    Miss,
    Hit { text: String, report: Box<Report> },
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A hit must re-parse and describe exactly the requested query.
    pub fn load(&self, key: &str, query: &Query) -> Lookup {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match serde_json::from_str::<Report>(&text) {
            Ok(report) if report.schema == SCHEMA && report.query == *query => Lookup::Hit {
                text,
                report: Box::new(report),
            },
            Ok(_) => Lookup::Corrupt(format!("{}: entry does not match the query", path.display())),
            Err(e) => Lookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    /// Writes through a temporary file in the same directory and renames it
    /// into place, so readers never see a partial entry.
    pub fn store(&self, key: &str, text: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}
