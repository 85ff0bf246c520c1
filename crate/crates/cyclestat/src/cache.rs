//! Content-addressed result cache: one JSON file per record, named by the
//! SHA-256 of the tool version and the computational part of the config.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::cli::RunConfig;
use crate::error::CliError;
use crate::record::{ResultRecord, VERSION};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(config: &RunConfig) -> Result<String, CliError> {
        let mut h = Sha256::new();
        h.update(VERSION.as_bytes());
        h.update([0]);
        h.update(serde_json::to_vec(&config.cache_identity())?);
        Ok(hex::encode(h.finalize()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored record, marked as cached. Unreadable entries count as misses.
    pub fn load(&self, config: &RunConfig) -> Result<Option<ResultRecord>, CliError> {
        let path = self.path(&Self::key(config)?);
        let Ok(bytes) = fs::read(&path) else {
            return Ok(None);
        };
        match serde_json::from_slice::<ResultRecord>(&bytes) {
            Ok(mut rec) if rec.version == VERSION => {
                rec.cached = true;
                Ok(Some(rec))
            }
            _ => Ok(None),
        }
    }

    pub fn store(&self, record: &ResultRecord) -> Result<(), CliError> {
        let key = Self::key(&record.config)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer(&mut f, record)?;
            f.write_all(b"\n")?;
        }
        fs::rename(tmp, self.path(&key))?;
        Ok(())
    }
}
