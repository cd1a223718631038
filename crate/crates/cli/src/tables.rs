//! Reference tables for `(2,1,1) ⊗ (1,1)` and the harness that regenerates
//! and diffs them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use stabletensor_core::engine::{Engine, Route};
use stabletensor_core::{Error, Family, FamilyKind, Partition, Result};

use crate::cache::{Cache, CacheRecord};

pub struct TableRow {
    pub rank: usize,
    pub expected: &'static str,
}

pub struct TableSpec {
    pub title: &'static str,
    pub file: &'static str,
    pub kind: FamilyKind,
    pub rows: Vec<TableRow>,
}

pub const LHS: &str = "2,1,1";
pub const RHS: &str = "1,1";

/// The four reference tables, as printed in the source tables.
pub fn reference_tables() -> Vec<TableSpec> {
    vec![
        TableSpec {
            title: "Decomposition for GL(n)",
            file: "table1_gl.tsv",
            kind: FamilyKind::Gl,
            rows: vec![
                TableRow { rank: 3, expected: "(2,2,2) + (3,2,1)" },
                TableRow { rank: 4, expected: "(2,2,2,0) + (2,2,1,1) + (3,2,1,0) + (3,1,1,1)" },
                TableRow {
                    rank: 5,
                    expected: "(2,2,2,0,0) + (2,2,1,1,0) + (2,1,1,1,1) + (3,2,1,0,0) + (3,1,1,1,0)",
                },
                TableRow {
                    rank: 6,
                    expected: "(2,2,2,0,0,0) + (2,2,1,1,0,0) + (2,1,1,1,1,0) + (3,2,1,0,0,0) + (3,1,1,1,0,0)",
                },
            ],
        },
        TableSpec {
            title: "Decomposition for SO(2n)",
            file: "table2_so_even.tsv",
            kind: FamilyKind::SoEven,
            rows: vec![
                TableRow {
                    rank: 3,
                    expected: "(2,2,2) + (1,1,0) + (2,2,0) + (3,2,1) + (2,0,0) + (3,1,0) + 2×(2,1,1)",
                },
                TableRow {
                    rank: 4,
                    expected: "(1,1,1,1) + (1,1,1,-1) + (2,2,2,0) + (1,1,0,0) + (2,2,1,1) + (2,2,1,-1) + (2,2,0,0) + (3,2,1,0) + (2,0,0,0) + (3,1,1,-1) + (3,1,1,1) + (3,1,0,0) + 3×(2,1,1,0)",
                },
                TableRow {
                    rank: 5,
                    expected: "(1,1,1,1,0) + (2,2,2,0,0) + (1,1,0,0,0) + (2,2,1,1,0) + (2,2,0,0,0) + (2,1,1,1,1) + (3,2,1,0,0) + (2,0,0,0,0) + (3,1,1,1,0) + (3,1,0,0,0) + (2,1,1,1,-1) + 2×(2,1,1,0,0)",
                },
                TableRow {
                    rank: 6,
                    expected: "(1,1,1,1,0,0) + (2,2,2,0,0,0) + (1,1,0,0,0,0) + (2,2,1,1,0,0) + (2,2,0,0,0,0) + (2,1,1,1,1,0) + (3,2,1,0,0,0) + (2,0,0,0,0,0) + (3,1,1,1,0,0) + (3,1,0,0,0,0) + 2×(2,1,1,0,0,0)",
                },
                TableRow {
                    rank: 7,
                    expected: "(1,1,1,1,0,0,0) + (2,2,2,0,0,0,0) + (1,1,0,0,0,0,0) + (2,2,1,1,0,0,0) + (2,2,0,0,0,0,0) + (2,1,1,1,1,0,0) + (3,2,1,0,0,0,0) + (2,0,0,0,0,0,0) + (3,1,1,1,0,0,0) + (3,1,0,0,0,0,0) + 2×(2,1,1,0,0,0,0)",
                },
            ],
        },
        TableSpec {
            title: "Decomposition for SO(2n+1)",
            file: "table3_so_odd.tsv",
            kind: FamilyKind::SoOdd,
            rows: vec![
                TableRow {
                    rank: 3,
                    expected: "(1,1,1) + (2,2,2) + (1,1,0) + (2,2,1) + (2,2,0) + (2,1,0) + (3,2,1) + (2,0,0) + (3,1,1) + (3,1,0) + 2×(2,1,1)",
                },
                TableRow {
                    rank: 4,
                    expected: "(1,1,1,1) + (2,2,2,0) + (1,1,0,0) + (2,2,1,1) + (2,2,0,0) + (2,1,1,1) + (3,2,1,0) + (2,0,0,0) + (3,1,1,1) + (3,1,0,0) + 2×(2,1,1,0)",
                },
                TableRow {
                    rank: 5,
                    expected: "(1,1,1,1,0) + (2,2,2,0,0) + (1,1,0,0,0) + (2,2,1,1,0) + (2,2,0,0,0) + (2,1,1,1,1) + (3,2,1,0,0) + (2,0,0,0,0) + (3,1,1,1,0) + (3,1,0,0,0) + 2×(2,1,1,0,0)",
                },
                TableRow {
                    rank: 6,
                    expected: "(1,1,1,1,0,0) + (2,2,2,0,0,0) + (1,1,0,0,0,0) + (2,2,1,1,0,0) + (2,2,0,0,0,0) + (2,1,1,1,1,0) + (3,2,1,0,0,0) + (2,0,0,0,0,0) + (3,1,1,1,0,0) + (3,1,0,0,0,0) + 2×(2,1,1,0,0,0)",
                },
            ],
        },
        TableSpec {
            title: "Decomposition for Sp(2n)",
            file: "table4_sp.tsv",
            kind: FamilyKind::Sp,
            rows: vec![
                TableRow {
                    rank: 3,
                    expected: "(2,2,2) + (1,1,0) + (2,2,0) + (2,1,1) + (3,2,1) + (2,0,0) + (3,1,0)",
                },
                TableRow {
                    rank: 4,
                    expected: "(1,1,1,1) + (2,2,2,0) + (1,1,0,0) + (2,2,1,1) + (2,2,0,0) + (3,2,1,0) + (2,0,0,0) + (3,1,1,1) + (3,1,0,0) + 2×(2,1,1,0)",
                },
                TableRow {
                    rank: 5,
                    expected: "(1,1,1,1,0) + (2,2,2,0,0) + (1,1,0,0,0) + (2,2,1,1,0) + (2,2,0,0,0) + (2,1,1,1,1) + (3,2,1,0,0) + (2,0,0,0,0) + (3,1,1,1,0) + (3,1,0,0,0) + 2×(2,1,1,0,0)",
                },
                TableRow {
                    rank: 6,
                    expected: "(1,1,1,1,0,0) + (2,2,2,0,0,0) + (1,1,0,0,0,0) + (2,2,1,1,0,0) + (2,2,0,0,0,0) + (2,1,1,1,1,0) + (3,2,1,0,0,0) + (2,0,0,0,0,0) + (3,1,1,1,0,0) + (3,1,0,0,0,0) + 2×(2,1,1,0,0,0)",
                },
            ],
        },
    ]
}

/// Parses `(2,2,1,1) + 3×(2,1,1,0)` into a weight table.
pub fn parse_sum(s: &str) -> Result<BTreeMap<Vec<i64>, u64>> {
    let bad = |t: &str| Error::InvalidInput(format!("cannot parse term {t:?}"));
    let mut out = BTreeMap::new();
    for term in s.split(" + ") {
        let term = term.trim();
        let (mult, weight) = match term.split_once('×') {
            Some((m, w)) => (m.trim().parse::<u64>().map_err(|_| bad(term))?, w.trim()),
            None => (1, term),
        };
        let inner = weight
            .strip_prefix('(')
            .and_then(|w| w.strip_suffix(')'))
            .ok_or_else(|| bad(term))?;
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| bad(term)))
            .collect::<Result<Vec<_>>>()?;
        *out.entry(coords).or_insert(0) += mult;
    }
    Ok(out)
}

/// Computes `lhs ⊗ rhs`, going through the cache when one is open. The
/// recursion is used at or above the stable threshold, the oracle elsewhere.
pub fn compute(
    engine: &Engine,
    mut cache: Option<&mut Cache>,
    family: Family,
    lhs: &Partition,
    rhs: &Partition,
    force_oracle: bool,
) -> Result<(stabletensor_core::Decomposition, Route)> {
    let route = if force_oracle {
        Route::KlimykOracle
    } else {
        planned_route(family, lhs, rhs)
    };
    if let Some(c) = cache.as_deref_mut() {
        if let Some(d) = c.lookup(family, lhs, rhs, route) {
            d.check_dimension(&lhs.weight(family)?, &rhs.weight(family)?)?;
            return Ok((d, route));
        }
    }
    let dec = match route {
        Route::PieriRecursive => engine.tensor_stable_range(family, lhs, rhs)?,
        Route::KlimykOracle => engine.oracle(family, lhs, rhs)?,
    };
    if let Some(c) = cache {
        c.append(CacheRecord::new(&dec, lhs, rhs, route))
            .map_err(|e| {
                Error::InvalidInput(format!("cannot write cache {}: {e}", c.path().display()))
            })?;
    }
    Ok((dec, route))
}

pub fn planned_route(family: Family, lhs: &Partition, rhs: &Partition) -> Route {
    use stabletensor_core::engine::stable_threshold;
    if family.kind != FamilyKind::Gl && family.rank >= stable_threshold(family.kind, lhs, rhs) {
        Route::PieriRecursive
    } else {
        Route::KlimykOracle
    }
}

#[derive(Debug, Default)]
pub struct ReproduceReport {
    pub rows: usize,
    pub mismatches: usize,
    /// Human-readable differences, empty when everything matched.
    pub diff: String,
    pub files: Vec<String>,
}

/// Regenerates every table into `out_dir` and compares each row with the
/// expected data.
pub fn reproduce(
    engine: &Engine,
    mut cache: Option<&mut Cache>,
    tables: &[TableSpec],
    out_dir: &Path,
) -> Result<ReproduceReport> {
    let io_err =
        |e: std::io::Error| Error::InvalidInput(format!("cannot write {}: {e}", out_dir.display()));
    fs::create_dir_all(out_dir).map_err(io_err)?;
    let lhs: Partition = LHS.parse()?;
    let rhs: Partition = RHS.parse()?;
    let mut report = ReproduceReport::default();
    for table in tables {
        let mut tsv = String::new();
        for row in &table.rows {
            let family = Family::new(table.kind, row.rank)?;
            let (dec, route) = compute(engine, cache.as_deref_mut(), family, &lhs, &rhs, false)?;
            report.rows += 1;
            for (w, m) in dec.iter() {
                let coords: Vec<String> = w.coords().iter().map(|c| c.to_string()).collect();
                writeln!(tsv, "{family}\t{}\t{m}\t{route}", coords.join(",")).unwrap();
            }
            let got: BTreeMap<Vec<i64>, u64> =
                dec.iter().map(|(w, m)| (w.coords().to_vec(), m)).collect();
            let expected = parse_sum(row.expected)?;
            if got != expected {
                report.mismatches += 1;
                writeln!(report.diff, "{} / {family}:", table.title).unwrap();
                for (w, m) in &expected {
                    match got.get(w) {
                        Some(g) if g == m => {}
                        Some(g) => {
                            writeln!(report.diff, "  ~ {w:?}: expected {m}, got {g}").unwrap()
                        }
                        None => writeln!(report.diff, "  - {w:?} x{m}").unwrap(),
                    }
                }
                for (w, g) in &got {
                    if !expected.contains_key(w) {
                        writeln!(report.diff, "  + {w:?} x{g}").unwrap();
                    }
                }
            }
        }
        let path = out_dir.join(table.file);
        fs::write(&path, tsv).map_err(io_err)?;
        report.files.push(path.display().to_string());
    }
    Ok(report)
}
