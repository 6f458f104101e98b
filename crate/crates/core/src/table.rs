//! Count containers shared by the exact and brute-force routes, and their
//! CSV/JSON forms. Counts are written as decimal strings everywhere.

use std::fmt;
use std::ops::Index;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::GroupParams;

/// A finite row of nonnegative counts, indexed from 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CountSeq(Vec<BigUint>);

impl CountSeq {
    pub fn new(values: Vec<BigUint>) -> Self {
        CountSeq(values)
    }

    pub fn zeros(len: usize) -> Self {
        CountSeq(vec![BigUint::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_values(self) -> Vec<BigUint> {
        self.0
    }

    /// The entry at `k`, or zero past the end.
    pub fn get(&self, k: usize) -> BigUint {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub(crate) fn add_at(&mut self, k: usize, amount: &BigUint) {
        self.0[k] += amount;
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigUint> {
        self.0.iter()
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.0.iter().map(|v| v.to_str_radix(10)).collect()
    }

    /// `k,count` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,count\n");
        for (k, v) in self.0.iter().enumerate() {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

impl Index<usize> for CountSeq {
    type Output = BigUint;

    fn index(&self, k: usize) -> &BigUint {
        &self.0[k]
    }
}

impl From<Vec<BigUint>> for CountSeq {
    fn from(values: Vec<BigUint>) -> Self {
        CountSeq(values)
    }
}

impl From<Vec<u64>> for CountSeq {
    fn from(values: Vec<u64>) -> Self {
        CountSeq(values.into_iter().map(BigUint::from).collect())
    }
}

impl<'a> IntoIterator for &'a CountSeq {
    type Item = &'a BigUint;
    type IntoIter = std::slice::Iter<'a, BigUint>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Comma-separated decimal values, e.g. `1,3,3,1`.
impl fmt::Display for CountSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Dense counts indexed by `(i, k)`.
///
/// For the joint distribution of `(csum, exc_A)` the box is
/// `i ∈ 0..=(r-1)n`, `k ∈ 0..n`; [`JointDistTable::zeros`] builds that
/// shape. Other shapes (such as the `(csum, exc)` table) use
/// [`JointDistTable::with_shape`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointDistTable {
    params: GroupParams,
    rows: Vec<Vec<BigUint>>,
    cols: usize,
}

impl JointDistTable {
    pub fn zeros(params: GroupParams) -> Self {
        let rows = (params.r() - 1) * params.n() + 1;
        Self::with_shape(params, rows, params.n())
    }

    pub fn with_shape(params: GroupParams, rows: usize, cols: usize) -> Self {
        JointDistTable {
            params,
            rows: vec![vec![BigUint::zero(); cols]; rows],
            cols,
        }
    }

    pub(crate) fn from_rows(params: GroupParams, rows: Vec<Vec<BigUint>>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|row| row.len() == cols));
        JointDistTable { params, rows, cols }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn r(&self) -> usize {
        self.params.r()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// Number of `i` rows.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of `k` columns.
    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// The count at `(i, k)`; zero outside the box.
    pub fn get(&self, i: usize, k: usize) -> BigUint {
        self.rows
            .get(i)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Borrowing variant of [`get`](Self::get) for indices inside the box.
    pub fn cell(&self, i: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(i).and_then(|row| row.get(k))
    }

    pub fn set(&mut self, i: usize, k: usize, value: BigUint) {
        self.rows[i][k] = value;
    }

    pub fn add(&mut self, i: usize, k: usize, amount: &BigUint) {
        self.rows[i][k] += amount;
    }

    pub fn row(&self, i: usize) -> CountSeq {
        CountSeq::new(self.rows[i].clone())
    }

    /// Sum over `i` for each `k`.
    pub fn column_sums(&self) -> CountSeq {
        let mut sums = CountSeq::zeros(self.cols);
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                sums.add_at(k, v);
            }
        }
        sums
    }

    /// Sum over `k` for each `i`.
    pub fn row_sums(&self) -> CountSeq {
        CountSeq::new(self.rows.iter().map(|row| row.iter().sum()).collect())
    }

    pub fn total(&self) -> BigUint {
        self.rows.iter().flatten().sum()
    }

    /// `(i, k, count)` in `(i, k)` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(k, v)| (i, k, v)))
    }

    /// Header `i\k,0,1,...` then one line per `i`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i\\k");
        for k in 0..self.cols {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&i.to_string());
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            k: usize,
            count: String,
        }
        #[derive(Serialize)]
        struct Doc {
            r: usize,
            n: usize,
            entries: Vec<Entry>,
        }
        let doc = Doc {
            r: self.r(),
            n: self.n(),
            entries: self
                .cells()
                .map(|(i, k, v)| Entry { i, k, count: v.to_str_radix(10) })
                .collect(),
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("table serializes")
    }
}

/// One disagreeing cell. `i` is `None` when comparing plain rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub k: usize,
    #[serde(serialize_with = "decimal")]
    pub left: BigUint,
    #[serde(serialize_with = "decimal")]
    pub right: BigUint,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.i {
            Some(i) => write!(f, "(i={i}, k={}): {} vs {}", self.k, self.left, self.right),
            None => write!(f, "k={}: {} vs {}", self.k, self.left, self.right),
        }
    }
}

/// Every cell where two tables disagree, in `(i, k)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub cells: Vec<CellDiff>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn first(&self) -> Option<&CellDiff> {
        self.cells.first()
    }
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return f.write_str("no differences");
        }
        for (idx, cell) in self.cells.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{cell}")?;
        }
        Ok(())
    }
}

pub fn diff_tables(a: &JointDistTable, b: &JointDistTable) -> Result<TableDiff> {
    if a.params != b.params {
        return Err(Error::ParamMismatch(a.r(), a.n(), b.r(), b.n()));
    }
    if a.row_count() != b.row_count() || a.col_count() != b.col_count() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.row_count(),
            a.col_count(),
            b.row_count(),
            b.col_count()
        )));
    }
    let cells = a
        .cells()
        .zip(b.cells())
        .filter(|((_, _, x), (_, _, y))| x != y)
        .map(|((i, k, x), (_, _, y))| CellDiff { i: Some(i), k, left: x.clone(), right: y.clone() })
        .collect();
    Ok(TableDiff { cells })
}

pub fn diff_seqs(a: &CountSeq, b: &CountSeq) -> Result<TableDiff> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch(format!("length {} vs {}", a.len(), b.len())));
    }
    let cells = a
        .iter()
        .zip(b.iter())
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(k, (x, y))| CellDiff { i: None, k, left: x.clone(), right: y.clone() })
        .collect();
    Ok(TableDiff { cells })
}
