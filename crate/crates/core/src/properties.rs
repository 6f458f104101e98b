//! Checkable forms of the structural results: the excedance-complement
//! bijection, palindromic `exc` distributions, log-concavity and
//! unimodality of rows, and the `k = 0` initial-condition diagnostic.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_dist::{exc_a_dist, initial_condition_formula, ExcAMethod};
use crate::oracle::brute_tables;
use crate::perm::{ColoredLetter, ColoredPermutation, Enumeration, GroupParams};
use crate::statistics::exc;
use crate::table::CountSeq;

/// Outcome of one property check. A failing verdict always carries a
/// counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyVerdict {
    pub fn passed(property: impl Into<String>) -> Self {
        PropertyVerdict {
            property: property.into(),
            r: None,
            n: None,
            pass: true,
            counterexample: None,
            note: None,
        }
    }

    pub fn failed(property: impl Into<String>, counterexample: impl Into<String>) -> Self {
        PropertyVerdict {
            pass: false,
            counterexample: Some(counterexample.into()),
            ..Self::passed(property)
        }
    }

    /// `passed` when `counterexample` is `None`.
    pub fn from_counterexample(property: impl Into<String>, counterexample: Option<String>) -> Self {
        match counterexample {
            None => Self::passed(property),
            Some(c) => Self::failed(property, c),
        }
    }

    pub fn at(mut self, params: GroupParams) -> Self {
        self.r = Some(params.r());
        self.n = Some(params.n());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.property)?;
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// The involution `π ↦ π'` with
/// `π'(n-i) = (n+1-j)^{r-β}` when `π(i) = j^β` for `i < n`, and
/// `π'(n) = (n+1-j)^{r-1-β}` when `π(n) = j^β`; colors taken mod `r`.
///
/// Under it `exc(π') = rn - 1 - exc(π)`.
pub fn symmetry_map(p: &ColoredPermutation) -> ColoredPermutation {
    let (r, n) = (p.r(), p.n());
    let mut window = vec![ColoredLetter::uncolored(0); n];
    for i in 1..n {
        let x = p.image(i);
        window[n - i - 1] = ColoredLetter::new(n + 1 - x.value, (r - x.color) % r);
    }
    let last = p.image(n);
    window[n - 1] = ColoredLetter::new(n + 1 - last.value, r - 1 - last.color);
    ColoredPermutation::from_window(r, window).expect("the image is a valid window")
}

/// First element (in enumeration order) failing `bad`, scanning the
/// `τ(1)` slices in parallel.
fn first_counterexample<F>(params: GroupParams, bad: F) -> Option<String>
where
    F: Fn(&ColoredPermutation) -> Option<String> + Sync,
{
    Enumeration::partitions(params)
        .into_par_iter()
        .find_map_first(|mut slice| slice.find_map(|p| bad(&p)))
}

/// `exc(π') = rn - 1 - exc(π)` for every `π ∈ G(r, n)`.
pub fn check_exc_complement(params: GroupParams) -> PropertyVerdict {
    let top = params.alphabet_len() - 1;
    let found = first_counterexample(params, |p| {
        let image = symmetry_map(p);
        let (a, b) = (exc(p), exc(&image));
        (a + b != top).then(|| format!("{p} -> {image}: exc {a} + {b} != {top}"))
    });
    PropertyVerdict::from_counterexample("exc_complement", found).at(params)
}

/// `π'' = π` for every `π ∈ G(r, n)`.
pub fn check_involution(params: GroupParams) -> PropertyVerdict {
    let found = first_counterexample(params, |p| {
        let back = symmetry_map(&symmetry_map(p));
        (back != *p).then(|| format!("{p} -> {back}"))
    });
    PropertyVerdict::from_counterexample("involution", found).at(params)
}

/// `row[k] = row[rn-1-k]` for all `k`, including `k = 0`.
pub fn check_symmetry_dist(row: &CountSeq, params: GroupParams) -> Result<PropertyVerdict> {
    let len = params.alphabet_len();
    if row.len() != len {
        return Err(Error::ShapeMismatch(format!(
            "exc row for G({}, {}) must have length {len}, got {}",
            params.r(),
            params.n(),
            row.len()
        )));
    }
    Ok(PropertyVerdict::from_counterexample("exc_symmetry", palindrome_break(row)).at(params))
}

fn palindrome_break(row: &CountSeq) -> Option<String> {
    let len = row.len();
    (0..len / 2)
        .find(|&k| row[k] != row[len - 1 - k])
        .map(|k| format!("index {k}: {} != {} at index {}", row[k], row[len - 1 - k], len - 1 - k))
}

/// `row[k]² ≥ row[k-1]·row[k+1]` at every interior index.
pub fn is_log_concave(row: &CountSeq) -> PropertyVerdict {
    let values = row.values();
    let found = (1..values.len().saturating_sub(1))
        .find(|&k| &values[k] * &values[k] < &values[k - 1] * &values[k + 1])
        .map(|k| {
            format!(
                "index {k}: {}^2 < {}·{}",
                values[k],
                values[k - 1],
                values[k + 1]
            )
        });
    PropertyVerdict::from_counterexample("log_concave", found)
}

/// Non-decreasing up to some peak, non-increasing after it.
pub fn is_unimodal(row: &CountSeq) -> PropertyVerdict {
    let values = row.values();
    let mut k = 1;
    while k < values.len() && values[k - 1] <= values[k] {
        k += 1;
    }
    while k < values.len() && values[k - 1] >= values[k] {
        k += 1;
    }
    let found = (k < values.len())
        .then(|| format!("index {k}: rises again from {} to {}", values[k - 1], values[k]));
    PropertyVerdict::from_counterexample("unimodal", found)
}

/// Which count the `k = 0` product formula reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialSemantics {
    /// `i` is the color sum.
    Csum,
    /// `i` is the number of nonzero-colored positions.
    ColoredCount,
}

impl fmt::Display for InitialSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitialSemantics::Csum => "csum",
            InitialSemantics::ColoredCount => "colored-count",
        })
    }
}

/// Formula values against both brute-force `k = 0` columns for one `(r, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialConditionDiagnosis {
    pub params: GroupParams,
    /// Formula values for `i = 0..=(r-1)n` (zero past `n`).
    pub formula: CountSeq,
    pub oracle_csum: CountSeq,
    pub oracle_colored_count: CountSeq,
    /// `d(r, n, 0)` from the DP.
    pub d0: BigUint,
}

impl InitialConditionDiagnosis {
    pub fn matches(&self, semantics: InitialSemantics) -> bool {
        match semantics {
            InitialSemantics::Csum => self.formula == self.oracle_csum,
            InitialSemantics::ColoredCount => self.formula == self.oracle_colored_count,
        }
    }

    /// Every semantics the formula reproduces exactly.
    pub fn matching(&self) -> Vec<InitialSemantics> {
        [InitialSemantics::Csum, InitialSemantics::ColoredCount]
            .into_iter()
            .filter(|&s| self.matches(s))
            .collect()
    }

    pub fn formula_sum_is_d0(&self) -> bool {
        self.formula.total() == self.d0
            && self.oracle_csum.total() == self.d0
            && self.oracle_colored_count.total() == self.d0
    }

    /// First `i` where the formula and the chosen brute-force column differ.
    pub fn first_mismatch(&self, semantics: InitialSemantics) -> Option<usize> {
        let other = match semantics {
            InitialSemantics::Csum => &self.oracle_csum,
            InitialSemantics::ColoredCount => &self.oracle_colored_count,
        };
        (0..self.formula.len()).find(|&i| self.formula[i] != other[i])
    }
}

pub fn diagnose_initial_condition(params: GroupParams) -> InitialConditionDiagnosis {
    let (r, n) = (params.r(), params.n());
    let report = brute_tables(params);
    let rows = (r - 1) * n + 1;
    let column = |t: &crate::table::JointDistTable| CountSeq::new((0..rows).map(|i| t.get(i, 0)).collect());
    InitialConditionDiagnosis {
        params,
        formula: CountSeq::new((0..rows).map(|i| initial_condition_formula(r, n, i)).collect()),
        oracle_csum: column(&report.joint_by_csum),
        oracle_colored_count: column(&report.joint_by_colored_count),
        d0: exc_a_dist(params, ExcAMethod::Recurrence)[0].clone(),
    }
}

/// Verdict over `n = 1..=n_max`: the formula must sum to `d(r, n, 0)`, and
/// the set of semantics it reproduces must be nonempty and the same for
/// every `n`. The note names that set.
pub fn check_initial_condition(r: usize, n_max: usize) -> Result<PropertyVerdict> {
    let mut verdict_set: Option<Vec<InitialSemantics>> = None;
    for n in 1..=n_max {
        let params = GroupParams::new(r, n)?;
        let diag = diagnose_initial_condition(params);
        let range = GroupParams::new(r, n_max)?;
        if !diag.formula_sum_is_d0() {
            return Ok(PropertyVerdict::failed(
                "initial_condition",
                format!("n={n}: formula sums to {} but d(r,n,0) = {}", diag.formula.total(), diag.d0),
            )
            .at(range));
        }
        let matching = diag.matching();
        if matching.is_empty() {
            let i = diag.first_mismatch(InitialSemantics::ColoredCount).unwrap_or(0);
            return Ok(PropertyVerdict::failed(
                "initial_condition",
                format!(
                    "n={n}, i={i}: formula {} vs csum {} vs colored-count {}",
                    diag.formula[i], diag.oracle_csum[i], diag.oracle_colored_count[i]
                ),
            )
            .at(range));
        }
        match &verdict_set {
            Some(prev) if *prev != matching => {
                return Ok(PropertyVerdict::failed(
                    "initial_condition",
                    format!("n={n}: matches {matching:?}, earlier sizes matched {prev:?}"),
                )
                .at(range));
            }
            _ => verdict_set = Some(matching),
        }
    }
    let names: Vec<String> = verdict_set.unwrap_or_default().iter().map(|s| s.to_string()).collect();
    Ok(PropertyVerdict::passed("initial_condition")
        .at(GroupParams::new(r, n_max)?)
        .with_note(format!("formula matches: {}", names.join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate;

    fn g(r: usize, n: usize) -> GroupParams {
        GroupParams::new(r, n).unwrap()
    }

    fn seq(v: &[u64]) -> CountSeq {
        CountSeq::from(v.to_vec())
    }

    #[test]
    fn worked_bijection_example() {
        let p = ColoredPermutation::parse("2^1,1^2,4^1,3", 3).unwrap();
        let image = symmetry_map(&p);
        assert_eq!(image.to_string(), "1^2,4^1,3^2,2^2");
        assert_eq!((exc(&p), exc(&image)), (4, 7));
        assert_eq!(symmetry_map(&image), p);
    }

    #[test]
    fn identity_maps_to_maximal_excedance() {
        for r in 1..=4 {
            for n in 1..=5 {
                let id = ColoredPermutation::identity(g(r, n));
                assert_eq!(exc(&symmetry_map(&id)), r * n - 1, "G({r},{n})");
            }
        }
    }

    #[test]
    fn involution_on_g33() {
        for p in enumerate(g(3, 3)) {
            assert_eq!(symmetry_map(&symmetry_map(&p)), p);
        }
        assert!(check_involution(g(3, 3)).pass);
    }

    #[test]
    fn complement_small() {
        assert!(check_exc_complement(g(1, 4)).pass);
        assert!(check_exc_complement(g(3, 3)).pass);
    }

    #[test]
    fn symmetry_rows() {
        assert!(check_symmetry_dist(&seq(&[1, 3, 3, 1]), g(2, 2)).unwrap().pass);
        assert!(check_symmetry_dist(&seq(&[1, 11, 11, 1]), g(1, 4)).unwrap().pass);
        let v = check_symmetry_dist(&seq(&[1, 2, 1, 1]), g(2, 2)).unwrap();
        assert!(!v.pass);
        assert!(v.counterexample.unwrap().starts_with("index 1"));
        assert!(check_symmetry_dist(&seq(&[1, 1]), g(2, 2)).is_err());
    }

    #[test]
    fn log_concavity() {
        assert!(is_log_concave(&seq(&[1, 11, 11, 1])).pass);
        let v = is_log_concave(&seq(&[1, 1, 2]));
        assert!(!v.pass);
        assert!(v.counterexample.unwrap().starts_with("index 1"));
        assert!(is_log_concave(&seq(&[])).pass);
        assert!(is_log_concave(&seq(&[5])).pass);
        assert!(is_log_concave(&seq(&[0, 0, 0])).pass);
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&seq(&[1, 3, 3, 1])).pass);
        assert!(!is_unimodal(&seq(&[2, 1, 2])).pass);
        assert!(is_unimodal(&seq(&[1, 2, 2, 2])).pass);
        assert!(is_unimodal(&seq(&[3, 2, 1])).pass);
        assert!(is_unimodal(&seq(&[])).pass);
    }

    #[test]
    fn verdict_rendering() {
        let v = PropertyVerdict::failed("log_concave", "index 1").at(g(2, 3));
        assert_eq!(v.to_string(), "FAIL log_concave r=2 n=3 counterexample: index 1");
        let json = serde_json::to_string(&PropertyVerdict::passed("unimodal")).unwrap();
        assert_eq!(json, r#"{"property":"unimodal","pass":true}"#);
    }

    #[test]
    fn initial_condition_binary_matches_both() {
        for n in 1..=6 {
            let diag = diagnose_initial_condition(g(2, n));
            assert!(diag.matches(InitialSemantics::Csum) && diag.matches(InitialSemantics::ColoredCount));
            assert!(diag.formula_sum_is_d0());
        }
    }
}
