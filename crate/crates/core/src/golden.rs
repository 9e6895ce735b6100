//! Reference table of nontrivial elementary divisors of `H²(Σ_n, S^λ_Z)`.
//!
//! TSV columns: `n`, `lambda` (exponent notation), `k`, divisors. The divisor
//! column is a comma list (`1` for the trivial group), a bracketed list of
//! primes when only the primes dividing the order are known, or `?`.

use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{primes_up_to, Partition};
use crate::store::ResultStore;
use crate::zassenhaus::CohomologyRecord;

/// The table shipped with the crate.
pub const REFERENCE_TSV: &str = include_str!("../data/h2_reference.tsv");

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GoldenEntry {
    /// Full list of nontrivial divisors; empty for the trivial group.
    Divisors(Vec<u64>),
    /// Only the primes dividing the group order are known.
    Primes(Vec<u64>),
    Unknown,
}

impl fmt::Display for GoldenEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        match self {
            GoldenEntry::Divisors(d) if d.is_empty() => f.write_str("1"),
            GoldenEntry::Divisors(d) => f.write_str(&join(d)),
            GoldenEntry::Primes(p) => write!(f, "({})", join(p)),
            GoldenEntry::Unknown => f.write_str("?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub n: usize,
    pub lambda: Partition,
    pub k: usize,
    pub entry: GoldenEntry,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldenTable {
    pub rows: Vec<GoldenRow>,
}

fn parse_list(s: &str, line: usize) -> Result<Vec<u64>, GoldenError> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<u64>().map_err(|e| GoldenError::Parse { line, msg: format!("bad number {t:?}: {e}") })
        })
        .collect()
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self, GoldenError> {
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = raw.split('\t').collect();
            if f.len() != 4 {
                return Err(GoldenError::Parse { line, msg: format!("expected 4 columns, found {}", f.len()) });
            }
            let bad = |msg: String| GoldenError::Parse { line, msg };
            let n: usize = f[0].parse().map_err(|e| bad(format!("bad n: {e}")))?;
            let lambda: Partition = f[1].parse().map_err(|e| bad(format!("bad partition: {e}")))?;
            if lambda.n() != n {
                return Err(bad(format!("partition {} has size {}, not {n}", f[1], lambda.n())));
            }
            let k: usize = f[2].parse().map_err(|e| bad(format!("bad k: {e}")))?;
            let d = f[3].trim();
            let entry = if d == "?" {
                GoldenEntry::Unknown
            } else if let Some(inner) = d.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                GoldenEntry::Primes(parse_list(inner, line)?)
            } else if d == "1" {
                GoldenEntry::Divisors(Vec::new())
            } else {
                GoldenEntry::Divisors(parse_list(d, line)?)
            };
            rows.push(GoldenRow { n, lambda, k, entry });
        }
        Ok(GoldenTable { rows })
    }

    pub fn load(path: &Path) -> Result<Self, GoldenError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn reference() -> Self {
        Self::parse(REFERENCE_TSV).expect("bundled table parses")
    }

    pub fn get(&self, lambda: &Partition) -> Option<&GoldenRow> {
        self.rows.iter().find(|r| &r.lambda == lambda)
    }

    pub fn rows_for(&self, n: usize) -> impl Iterator<Item = &GoldenRow> {
        self.rows.iter().filter(move |r| r.n == n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowCheck {
    Match,
    Mismatch { field: String, expected: String, got: String },
    /// The record exists but the row carries no comparable divisor data, or
    /// the record was not computed; `k` still matched.
    Skipped { reason: String },
}

/// Primes dividing some divisor; all divisors divide `n!`.
fn primes_of(divisors: &[BigUint], n: usize) -> Vec<u64> {
    primes_up_to(n as u64)
        .into_iter()
        .filter(|&p| divisors.iter().any(|d| (d % BigUint::from(p)) == BigUint::from(0u32)))
        .collect()
}

/// Compares one degree-2 record with its row.
pub fn compare(row: &GoldenRow, record: &CohomologyRecord) -> RowCheck {
    if record.meta.k != 0 && record.meta.k != row.k {
        return RowCheck::Mismatch { field: "k".into(), expected: row.k.to_string(), got: record.meta.k.to_string() };
    }
    let Some(torsion) = record.integral.as_ref().and_then(|g| g.torsion()) else {
        let reason = record.note.clone().unwrap_or_else(|| "not computed".into());
        return RowCheck::Skipped { reason };
    };
    match &row.entry {
        GoldenEntry::Unknown => RowCheck::Skipped { reason: "reference value unknown".into() },
        GoldenEntry::Divisors(want) => {
            let got: Vec<String> = torsion.iter().map(|d| d.to_string()).collect();
            let want_s: Vec<String> = want.iter().map(|d| d.to_string()).collect();
            if got == want_s {
                RowCheck::Match
            } else {
                RowCheck::Mismatch {
                    field: "divisors".into(),
                    expected: row.entry.to_string(),
                    got: GoldenEntry::Divisors(torsion.iter().map(|d| d.to_u64().unwrap_or(0)).collect()).to_string(),
                }
            }
        }
        GoldenEntry::Primes(want) => {
            let got = primes_of(torsion, row.n);
            if &got == want {
                RowCheck::Match
            } else {
                RowCheck::Mismatch {
                    field: "primes".into(),
                    expected: row.entry.to_string(),
                    got: GoldenEntry::Primes(got).to_string(),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOutcome {
    pub lambda: Partition,
    pub check: RowCheck,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub matched: usize,
    pub mismatches: Vec<RowOutcome>,
    pub skipped: Vec<RowOutcome>,
    /// Rows in range without a degree-2 record.
    pub missing: Vec<Partition>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} matched, {} mismatched, {} skipped, {} missing",
            self.matched,
            self.mismatches.len(),
            self.skipped.len(),
            self.missing.len()
        )
    }
}

/// Checks every row with `n` in range against the degree-2 records of `store`.
pub fn verify(golden: &GoldenTable, store: &ResultStore, n_range: std::ops::RangeInclusive<usize>) -> VerifyReport {
    let mut report = VerifyReport::default();
    for row in golden.rows.iter().filter(|r| n_range.contains(&r.n)) {
        let Some(record) = store.get(&row.lambda, 2) else {
            report.missing.push(row.lambda.clone());
            continue;
        };
        let outcome = RowOutcome { lambda: row.lambda.clone(), check: compare(row, record) };
        match outcome.check {
            RowCheck::Match => report.matched += 1,
            RowCheck::Mismatch { .. } => report.mismatches.push(outcome),
            RowCheck::Skipped { .. } => report.skipped.push(outcome),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_table_shape() {
        let t = GoldenTable::reference();
        let counts: Vec<usize> = (2..=9).map(|n| t.rows_for(n).count()).collect();
        assert_eq!(counts, vec![2, 3, 5, 7, 11, 15, 22, 30]);
        let row = t.get(&"5,2^2,1^3".parse().unwrap()).unwrap();
        assert_eq!(row.entry, GoldenEntry::Primes(vec![3]));
        assert_eq!(row.k, 3696);
        assert_eq!(t.get(&"7,3,1".parse().unwrap()).unwrap().entry, GoldenEntry::Divisors(vec![2, 18]));
        assert_eq!(t.get(&"2,1".parse().unwrap()).unwrap().entry, GoldenEntry::Divisors(vec![]));
        assert!(t.rows.iter().any(|r| r.entry == GoldenEntry::Unknown));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(GoldenTable::parse("# h\n3\t2,2\t1\t1\n"), Err(GoldenError::Parse { line: 2, .. })));
        assert!(matches!(GoldenTable::parse("3\t2,1\t2\n"), Err(GoldenError::Parse { line: 1, .. })));
    }

    #[test]
    fn prime_sets() {
        let d: Vec<BigUint> = [2u64, 18, 30].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(primes_of(&d, 6), vec![2, 3, 5]);
        assert!(primes_of(&[], 6).is_empty());
    }
}
