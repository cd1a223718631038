//! Append-only JSON-lines store of computed decompositions.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use stabletensor_core::engine::Route;
use stabletensor_core::{Decomposition, Family, FamilyKind, Partition};

use crate::format::SCHEMA_VERSION;

/// Environment variable that takes precedence over `--cache`.
pub const CACHE_ENV: &str = "STABLETENSOR_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheRecord {
    pub family: String,
    pub rank: usize,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    /// `(weight padded to rank, multiplicity)`, descending by weight.
    pub result: Vec<(Vec<i64>, u64)>,
    pub engine: String,
    pub schema_version: u32,
}

type Key = (String, usize, Vec<i64>, Vec<i64>, String);

impl CacheRecord {
    pub fn new(dec: &Decomposition, lhs: &Partition, rhs: &Partition, route: Route) -> Self {
        let family = dec.family();
        Self {
            family: family.kind.as_str().to_owned(),
            rank: family.rank,
            lhs: lhs.padded(family.rank).expect("lhs fits the rank"),
            rhs: rhs.padded(family.rank).expect("rhs fits the rank"),
            result: dec.iter().map(|(w, m)| (w.coords().to_vec(), m)).collect(),
            engine: route.as_str().to_owned(),
            schema_version: SCHEMA_VERSION,
        }
    }

    fn key(&self) -> Key {
        (
            self.family.clone(),
            self.rank,
            self.lhs.clone(),
            self.rhs.clone(),
            self.engine.clone(),
        )
    }

    pub fn family(&self) -> stabletensor_core::Result<Family> {
        Family::new(self.family.parse::<FamilyKind>()?, self.rank)
    }

    pub fn route(&self) -> stabletensor_core::Result<Route> {
        self.engine.parse()
    }

    pub fn lhs_partition(&self) -> stabletensor_core::Result<Partition> {
        Partition::new(self.lhs.clone())
    }

    pub fn rhs_partition(&self) -> stabletensor_core::Result<Partition> {
        Partition::new(self.rhs.clone())
    }

    pub fn decomposition(&self) -> stabletensor_core::Result<Decomposition> {
        Decomposition::from_terms(self.family()?, self.result.iter().cloned())
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Records keyed on `(family, rank, lhs, rhs, engine)`; later lines win.
pub struct Cache {
    path: PathBuf,
    records: HashMap<Key, CacheRecord>,
    order: Vec<Key>,
    writer: Mutex<File>,
    hits: usize,
}

impl Cache {
    /// Loads every well-formed line; malformed ones are reported in the
    /// returned warnings and skipped.
    pub fn open(path: impl AsRef<Path>) -> io::Result<(Self, Vec<String>)> {
        let path = path.as_ref().to_path_buf();
        let mut records = HashMap::new();
        let mut order = Vec::new();
        let mut warnings = Vec::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(r) if r.schema_version == SCHEMA_VERSION => {
                        let key = r.key();
                        if records.insert(key.clone(), r).is_none() {
                            order.push(key);
                        }
                    }
                    Ok(r) => warnings.push(format!(
                        "{}:{}: unsupported schema version {}",
                        path.display(),
                        i + 1,
                        r.schema_version
                    )),
                    Err(e) => warnings.push(format!(
                        "{}:{}: skipping corrupt line: {e}",
                        path.display(),
                        i + 1
                    )),
                }
            }
        }
        let writer = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok((
            Self {
                path,
                records,
                order,
                writer: Mutex::new(writer),
                hits: 0,
            },
            warnings,
        ))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of successful lookups so far.
    pub fn hits(&self) -> usize {
        self.hits
    }

    /// Records in first-seen order.
    pub fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        self.order.iter().map(|k| &self.records[k])
    }

    pub fn lookup(
        &mut self,
        family: Family,
        lhs: &Partition,
        rhs: &Partition,
        route: Route,
    ) -> Option<Decomposition> {
        let key = (
            family.kind.as_str().to_owned(),
            family.rank,
            lhs.padded(family.rank).ok()?,
            rhs.padded(family.rank).ok()?,
            route.as_str().to_owned(),
        );
        let dec = self.records.get(&key)?.decomposition().ok()?;
        self.hits += 1;
        Some(dec)
    }

    pub fn append(&mut self, record: CacheRecord) -> io::Result<()> {
        let mut line = record.to_line();
        line.push('\n');
        {
            let mut w = self.writer.lock().unwrap();
            w.write_all(line.as_bytes())?;
            w.flush()?;
        }
        let key = record.key();
        if self.records.insert(key.clone(), record).is_none() {
            self.order.push(key);
        }
        Ok(())
    }
}

/// `STABLETENSOR_CACHE` wins over `--cache`; neither means no cache.
pub fn resolve_cache_path(flag: Option<&Path>, env: Option<&str>) -> Option<PathBuf> {
    match env {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.map(Path::to_path_buf),
    }
}
