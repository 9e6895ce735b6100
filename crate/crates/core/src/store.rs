//! Append-only JSON-lines cache of cohomology records.
//!
//! Each line is one [`StoredRecord`]. Lines written by another algorithm
//! version are kept on disk but ignored; for a given `(λ, degree)` the last
//! line wins.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{by_size_then_lex, Partition};
use crate::zassenhaus::{CohomologyRecord, SnfStrategy};

/// Bumped whenever a change could alter stored results.
pub const ALGORITHM_VERSION: u32 = 1;

pub const STORE_FILE: &str = "records.jsonl";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("io on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {source}")]
    Parse { path: PathBuf, line: usize, source: serde_json::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredRecord {
    pub version: u32,
    pub n: usize,
    pub lambda: Partition,
    pub degree: u8,
    pub k: usize,
    pub strategy: Option<SnfStrategy>,
    pub wall_ms: u64,
    pub record: CohomologyRecord,
}

impl StoredRecord {
    pub fn new(record: CohomologyRecord) -> Self {
        StoredRecord {
            version: ALGORITHM_VERSION,
            n: record.lambda.n(),
            lambda: record.lambda.clone(),
            degree: record.degree,
            k: record.meta.k,
            strategy: record.meta.strategy,
            wall_ms: record.meta.wall_ms,
            record,
        }
    }
}

#[derive(Debug)]
pub struct ResultStore {
    path: PathBuf,
    records: BTreeMap<(Partition, u8), CohomologyRecord>,
    writer: Option<BufWriter<File>>,
}

impl ResultStore {
    /// Opens (creating if needed) the store in `dir`.
    pub fn open(dir: &Path) -> Result<Self, StoreError> {
        let io = |source| StoreError::Io { path: dir.to_path_buf(), source };
        fs::create_dir_all(dir).map_err(io)?;
        let path = dir.join(STORE_FILE);
        let mut records = BTreeMap::new();
        if path.exists() {
            let file = File::open(&path).map_err(|source| StoreError::Io { path: path.clone(), source })?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|source| StoreError::Io { path: path.clone(), source })?;
                if line.trim().is_empty() {
                    continue;
                }
                let stored: StoredRecord = serde_json::from_str(&line)
                    .map_err(|source| StoreError::Parse { path: path.clone(), line: i + 1, source })?;
                if stored.version == ALGORITHM_VERSION {
                    records.insert((stored.lambda, stored.degree), stored.record);
                }
            }
        }
        Ok(ResultStore { path, records, writer: None })
    }

    /// Store that never touches the disk.
    pub fn in_memory() -> Self {
        ResultStore { path: PathBuf::new(), records: BTreeMap::new(), writer: None }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, lambda: &Partition, degree: u8) -> Option<&CohomologyRecord> {
        self.records.get(&(lambda.clone(), degree))
    }

    /// Appends `record` and makes it the current value for its key.
    pub fn insert(&mut self, record: CohomologyRecord) -> Result<(), StoreError> {
        if !self.path.as_os_str().is_empty() {
            if self.writer.is_none() {
                let file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&self.path)
                    .map_err(|source| StoreError::Io { path: self.path.clone(), source })?;
                self.writer = Some(BufWriter::new(file));
            }
            let w = self.writer.as_mut().expect("writer opened above");
            let line = serde_json::to_string(&StoredRecord::new(record.clone()))
                .expect("records always serialize");
            writeln!(w, "{line}")
                .and_then(|_| w.flush())
                .map_err(|source| StoreError::Io { path: self.path.clone(), source })?;
        }
        self.records.insert((record.lambda.clone(), record.degree), record);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Current records, ordered by size, then partition, then degree.
    pub fn records(&self) -> Vec<&CohomologyRecord> {
        let mut out: Vec<&CohomologyRecord> = self.records.values().collect();
        out.sort_by(|a, b| by_size_then_lex(&a.lambda, &b.lambda).then(a.degree.cmp(&b.degree)));
        out
    }

    pub fn records_of_degree(&self, degree: u8) -> Vec<&CohomologyRecord> {
        self.records().into_iter().filter(|r| r.degree == degree).collect()
    }

    pub fn max_n(&self) -> usize {
        self.records.keys().map(|(l, _)| l.n()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zassenhaus::{h0_integral, h2_integral, SolveOptions};

    #[test]
    fn round_trip_and_last_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let lambda: Partition = "3,1,1".parse().unwrap();
        let mut rec = h2_integral(&lambda, &SolveOptions::default()).unwrap();
        rec.modp_dims.insert(5, 1);
        rec.note = Some("x".into());
        {
            let mut store = ResultStore::open(dir.path()).unwrap();
            store.insert(h0_integral(&lambda)).unwrap();
            store.insert(CohomologyRecord::not_computed(&lambda, 2, "pending")).unwrap();
            store.insert(rec.clone()).unwrap();
        }
        let store = ResultStore::open(dir.path()).unwrap();
        assert_eq!(store.len(), 2);
        assert_eq!(store.get(&lambda, 2), Some(&rec));
        assert_eq!(store.records()[0].degree, 0);
    }

    #[test]
    fn other_versions_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let lambda: Partition = "2".parse().unwrap();
        let mut stored = StoredRecord::new(h0_integral(&lambda));
        stored.version = ALGORITHM_VERSION + 1;
        fs::write(dir.path().join(STORE_FILE), serde_json::to_string(&stored).unwrap() + "\n").unwrap();
        assert!(ResultStore::open(dir.path()).unwrap().is_empty());
        fs::write(dir.path().join(STORE_FILE), "{not json\n").unwrap();
        assert!(matches!(ResultStore::open(dir.path()), Err(StoreError::Parse { line: 1, .. })));
    }
}
