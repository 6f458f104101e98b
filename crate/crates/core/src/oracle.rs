//! Brute-force ground truth by exhaustive enumeration.
//!
//! Depends only on [`crate::perm`] and [`crate::statistics`]; nothing here
//! touches the recursions or the closed forms.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::Result;
use crate::perm::{Enumeration, GroupParams};
use crate::statistics;
use crate::table::{diff_seqs, diff_tables, CountSeq, JointDistTable, TableDiff};

/// Above this many elements a warning is logged before enumerating.
pub const FEASIBILITY_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub params: GroupParams,
    /// Counts by `(csum, exc_A)`.
    pub joint_by_csum: JointDistTable,
    /// Counts by `(number of nonzero-colored positions, exc_A)`.
    pub joint_by_colored_count: JointDistTable,
    /// Counts by `exc`, length `r·n`.
    pub exc_row: CountSeq,
    pub elapsed: Duration,
}

impl OracleReport {
    /// `d(r, n, ·)`.
    pub fn exc_a_row(&self) -> CountSeq {
        self.joint_by_csum.column_sums()
    }

    /// Equality of every count, ignoring timing.
    pub fn same_counts(&self, other: &OracleReport) -> bool {
        self.params == other.params
            && self.joint_by_csum == other.joint_by_csum
            && self.joint_by_colored_count == other.joint_by_colored_count
            && self.exc_row == other.exc_row
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.params.r(),
            "n": self.params.n(),
            "joint_by_csum": self.joint_by_csum.to_json_value()["entries"],
            "joint_by_colored_count": self.joint_by_colored_count.to_json_value()["entries"],
            "exc_row": self.exc_row.to_decimal_strings(),
        })
    }
}

#[derive(Debug, Clone)]
struct Counts {
    by_csum: Vec<u64>,
    by_colored: Vec<u64>,
    exc: Vec<u64>,
}

impl Counts {
    fn new(params: GroupParams) -> Self {
        let rows = (params.r() - 1) * params.n() + 1;
        Counts {
            by_csum: vec![0; rows * params.n()],
            by_colored: vec![0; rows * params.n()],
            exc: vec![0; params.alphabet_len()],
        }
    }

    fn tally(mut self, params: GroupParams, slice: Enumeration) -> Self {
        let n = params.n();
        for p in slice {
            let exc = statistics::exc(&p);
            let exc_a = statistics::exc_a(&p);
            let csum = statistics::csum(&p);
            assert_eq!(exc, params.r() * exc_a + csum, "exc of {p} disagrees with r·exc_A + csum");
            self.by_csum[csum * n + exc_a] += 1;
            self.by_colored[statistics::colored_count(&p) * n + exc_a] += 1;
            self.exc[exc] += 1;
        }
        self
    }

    fn merge(mut self, other: Counts) -> Self {
        for (a, b) in self.by_csum.iter_mut().zip(other.by_csum) {
            *a += b;
        }
        for (a, b) in self.by_colored.iter_mut().zip(other.by_colored) {
            *a += b;
        }
        for (a, b) in self.exc.iter_mut().zip(other.exc) {
            *a += b;
        }
        self
    }

    fn into_report(self, params: GroupParams, elapsed: Duration) -> OracleReport {
        let n = params.n();
        let to_table = |flat: Vec<u64>| {
            let rows = flat
                .chunks(n)
                .map(|row| row.iter().map(|&v| BigUint::from(v)).collect())
                .collect();
            JointDistTable::from_rows(params, rows, n)
        };
        OracleReport {
            params,
            joint_by_csum: to_table(self.by_csum),
            joint_by_colored_count: to_table(self.by_colored),
            exc_row: CountSeq::from(self.exc),
            elapsed,
        }
    }
}

fn warn_if_large(params: GroupParams) {
    if params.order() > BigUint::from(FEASIBILITY_LIMIT) {
        log::warn!(
            "enumerating G({}, {}) visits {} elements; this may take a long time",
            params.r(),
            params.n(),
            params.order()
        );
    }
}

/// Single-threaded pass over the whole group.
pub fn brute_tables_serial(params: GroupParams) -> OracleReport {
    warn_if_large(params);
    let start = Instant::now();
    let counts = Counts::new(params).tally(params, Enumeration::new(params));
    counts.into_report(params, start.elapsed())
}

/// Pass over the group split by `τ(1)`, counted in parallel on the current
/// rayon pool and merged by addition.
pub fn brute_tables(params: GroupParams) -> OracleReport {
    warn_if_large(params);
    let start = Instant::now();
    let counts = Enumeration::partitions(params)
        .into_par_iter()
        .map(|slice| Counts::new(params).tally(params, slice))
        .reduce(|| Counts::new(params), Counts::merge);
    counts.into_report(params, start.elapsed())
}

/// Cell-by-cell comparison of two tables of the same shape.
pub fn compare(a: &JointDistTable, b: &JointDistTable) -> Result<TableDiff> {
    diff_tables(a, b)
}

/// Entry-by-entry comparison of two rows of the same length.
pub fn compare_rows(a: &CountSeq, b: &CountSeq) -> Result<TableDiff> {
    diff_seqs(a, b)
}
