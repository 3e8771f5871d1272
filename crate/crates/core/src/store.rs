//! Append-only certificate cache: one certificate per line (JSON lines).
//!
//! Entries are keyed by space, color count and engine version. Lines written
//! by another engine version are kept in the file but never returned. Writers
//! take an exclusive advisory lock on the file for the duration of a write.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::certificate::{Certificate, CertificateKind, ENGINE_VERSION};
use crate::space::Space;

#[derive(Debug)]
pub struct CertificateStore {
    path: PathBuf,
    entries: Vec<Certificate>,
    warnings: Vec<String>,
    stale: usize,
}

impl CertificateStore {
    /// Loads the cache at `path`; a missing file is an empty cache.
    /// Unparseable lines are skipped and reported through [`warnings`](Self::warnings).
    pub fn open(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut store = CertificateStore {
            path,
            entries: Vec::new(),
            warnings: Vec::new(),
            stale: 0,
        };
        let file = match File::open(&store.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(store),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        for (k, line) in BufReader::new(&file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match Certificate::from_json(line.trim()) {
                Ok(c) if c.engine == ENGINE_VERSION => store.entries.push(c),
                Ok(_) => store.stale += 1,
                Err(e) => store.warnings.push(format!(
                    "{}:{}: skipped corrupt entry: {e}",
                    store.path.display(),
                    k + 1
                )),
            }
        }
        file.unlock()?;
        Ok(store)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Entries from other engine versions that were ignored.
    pub fn stale_count(&self) -> usize {
        self.stale
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Most recent certificate for `(space, r)` from the current engine.
    pub fn get(&self, space: Space, r: usize) -> Option<&Certificate> {
        self.entries.iter().rev().find(|c| c.space == space && c.r == r)
    }

    /// Largest cached witness and smallest cached exhaustion for `space`.
    pub fn bounds(&self, space: Space) -> (Option<&Certificate>, Option<&Certificate>) {
        let of = |kind| self.entries.iter().filter(move |c| c.space == space && c.kind == kind);
        (
            of(CertificateKind::Witness).max_by_key(|c| c.r),
            of(CertificateKind::Exhaustion).min_by_key(|c| c.r),
        )
    }

    /// Appends `cert` unless an entry for the same key and kind is present.
    /// Returns whether a line was written.
    pub fn put(&mut self, cert: &Certificate) -> io::Result<bool> {
        if cert.engine != ENGINE_VERSION {
            return Ok(false);
        }
        if self.get(cert.space, cert.r).is_some_and(|c| c.kind == cert.kind) {
            return Ok(false);
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        let mut line = cert.to_json();
        line.push('\n');
        let written = file.write_all(line.as_bytes()).and_then(|()| file.sync_data());
        file.unlock()?;
        written?;
        let mut stored = cert.clone();
        stored.verified = false;
        self.entries.push(stored);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lower_bound_coloring;
    use crate::grid::GridDims;

    fn dims(m: usize, n: usize) -> GridDims {
        GridDims::new(m, n).unwrap()
    }

    #[test]
    fn put_then_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let space = Space::Grid(dims(3, 4));
        let w = Certificate::witness(space, lower_bound_coloring(dims(3, 4)).unwrap(), 5);
        let x = Certificate::exhaustion(space, 8, 40);
        let mut s = CertificateStore::open(&path).unwrap();
        assert!(s.is_empty());
        assert!(s.put(&w).unwrap());
        assert!(s.put(&x).unwrap());
        assert!(!s.put(&x).unwrap());

        let s = CertificateStore::open(&path).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(space, 7).unwrap().to_json(), w.to_json());
        assert_eq!(s.get(space, 8).unwrap().kind, CertificateKind::Exhaustion);
        assert!(s.get(space, 6).is_none());
        assert!(s.get(Space::Grid(dims(4, 4)), 8).is_none());
        let (lo, hi) = s.bounds(space);
        assert_eq!((lo.unwrap().r, hi.unwrap().r), (7, 8));
    }

    #[test]
    fn corrupt_and_stale_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let space = Space::Interval(5);
        let good = Certificate::exhaustion(space, 4, 3);
        let old = Certificate {
            engine: "schur-rainbow/0.0.0".into(),
            ..Certificate::exhaustion(space, 5, 1)
        };
        let text = format!("{}\n{{not json\n\n{}\n", good.to_json(), old.to_json());
        std::fs::write(&path, text).unwrap();
        let s = CertificateStore::open(&path).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.warnings().len(), 1);
        assert!(s.warnings()[0].contains(":2:"));
        assert_eq!(s.stale_count(), 1);
        assert!(s.get(space, 5).is_none());
    }
}
