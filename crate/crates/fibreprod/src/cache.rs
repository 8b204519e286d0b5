//! A TSV cache of point counts keyed by variety and prime.
//!
//! Rows are `variety  p  points  version`. Rows written by another version
//! of the counting code are ignored on load and dropped on save. The file
//! is replaced atomically and only ever written by the process that loaded
//! it, after all counting has finished.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

pub const CACHE_VERSION: &str = concat!("fibreprod-", env!("CARGO_PKG_VERSION"));
const HEADER: &str = "variety\tp\tpoints\tversion";

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    entries: BTreeMap<(String, u32), u64>,
    dirty: bool,
}

impl CountCache {
    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let file = path.display().to_string();
            for (i, line) in text.lines().enumerate() {
                if line.is_empty() || line == HEADER {
                    continue;
                }
                let cols: Vec<&str> = line.split('\t').collect();
                let bad = || CliError::data(&file, format!("line {}: malformed cache row {line:?}", i + 1));
                let [variety, p, n, version] = cols[..] else { return Err(bad()) };
                if version != CACHE_VERSION {
                    continue;
                }
                let p: u32 = p.parse().map_err(|_| bad())?;
                let n: u64 = n.parse().map_err(|_| bad())?;
                if let Some(old) = entries.insert((variety.to_string(), p), n) {
                    if old != n {
                        return Err(CliError::data(&file, format!("conflicting counts for {variety} at {p}")));
                    }
                }
            }
        }
        Ok(CountCache { path: path.to_path_buf(), entries, dirty: false })
    }

    pub fn get(&self, variety: &str, p: u32) -> Option<u64> {
        self.entries.get(&(variety.to_string(), p)).copied()
    }

    pub fn insert(&mut self, variety: &str, p: u32, points: u64) {
        if self.entries.insert((variety.to_string(), p), points) != Some(points) {
            self.dirty = true;
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let mut text = String::from(HEADER);
        text.push('\n');
        for ((variety, p), n) in &self.entries {
            text.push_str(&format!("{variety}\t{p}\t{n}\t{CACHE_VERSION}\n"));
        }
        let tmp = self.path.with_extension("tmp");
        fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &self.path).map_err(|e| CliError::io(&self.path, e))?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stale_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("counts.tsv");
        let mut c = CountCache::open(&path).unwrap();
        assert!(c.is_empty());
        c.insert("W1", 3, 475);
        c.save().unwrap();
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str("W1\t7\t1\told-version\n");
        fs::write(&path, text).unwrap();
        let c = CountCache::open(&path).unwrap();
        assert_eq!((c.get("W1", 3), c.get("W1", 7), c.len()), (Some(475), None, 1));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("counts.tsv");
        fs::write(&path, "W1\t3\n").unwrap();
        assert!(matches!(CountCache::open(&path), Err(CliError::Data { .. })));
    }
}
