//! Verification suites over parameter ranges, as run by `excedance check`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::closed_form::{check_eq2, d_closed, d_closed_row, d_explicit_row};
use crate::error::{Error, Result};
use crate::exact_dist::{eulerian_row, exc_a_rows, exc_dist, JointRecursion, Perturbation};
use crate::oracle::{brute_tables, compare, compare_rows};
use crate::perm::{Enumeration, GroupParams};
use crate::properties::{
    check_exc_complement, check_initial_condition, check_involution, check_symmetry_dist, is_log_concave,
    is_unimodal, PropertyVerdict,
};
use crate::statistics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma,
    Recursion,
    Closed,
    Eq2,
    Symmetry,
    LogConcave,
    Initial,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Lemma,
        Suite::Recursion,
        Suite::Closed,
        Suite::Eq2,
        Suite::Symmetry,
        Suite::LogConcave,
        Suite::Initial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::Recursion => "recursion",
            Suite::Closed => "closed",
            Suite::Eq2 => "eq2",
            Suite::Symmetry => "symmetry",
            Suite::LogConcave => "logconcave",
            Suite::Initial => "initial",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub r_max: usize,
    pub n_max: usize,
    /// Perturb the joint recursion, to confirm the suites catch it.
    pub fault: Option<Perturbation>,
}

impl CheckOptions {
    pub fn new(r_max: usize, n_max: usize) -> Result<Self> {
        GroupParams::new(r_max, n_max)?;
        Ok(CheckOptions { r_max, n_max, fault: None })
    }

    fn recursion(&self) -> JointRecursion {
        self.fault.map(JointRecursion::perturbed).unwrap_or_default()
    }

    fn grid(&self) -> impl Iterator<Item = GroupParams> + '_ {
        (1..=self.r_max).flat_map(move |r| (1..=self.n_max).map(move |n| GroupParams::new(r, n).unwrap()))
    }
}

pub fn run(suite: Suite, opts: &CheckOptions) -> Result<Vec<PropertyVerdict>> {
    match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run(s, opts)?);
            }
            Ok(all)
        }
        Suite::Lemma => Ok(opts.grid().map(lemma).collect()),
        Suite::Recursion => recursion(opts),
        Suite::Closed => closed(opts),
        Suite::Eq2 => (1..=opts.r_max)
            .map(|r| {
                let report = check_eq2(r, opts.n_max)?;
                let found = report.first_failure.map(|n| format!("identity fails at n={n}"));
                Ok(PropertyVerdict::from_counterexample("eq2", found).at(GroupParams::new(r, opts.n_max)?))
            })
            .collect(),
        Suite::Symmetry => symmetry(opts),
        Suite::LogConcave => log_concave(opts),
        Suite::Initial => (1..=opts.r_max).map(|r| check_initial_condition(r, opts.n_max)).collect(),
    }
}

pub fn all_pass(verdicts: &[PropertyVerdict]) -> bool {
    verdicts.iter().all(|v| v.pass)
}

fn lemma(params: GroupParams) -> PropertyVerdict {
    let r = params.r();
    let found = Enumeration::new(params).find_map(|p| {
        let scanned = statistics::exc(&p);
        let (a, c) = (statistics::exc_a(&p), statistics::csum(&p));
        (scanned != r * a + c).then(|| format!("{p}: exc {scanned} != {r}·{a} + {c}"))
    });
    PropertyVerdict::from_counterexample("lemma", found).at(params)
}

fn recursion(opts: &CheckOptions) -> Result<Vec<PropertyVerdict>> {
    let mut out = Vec::new();
    for r in 1..=opts.r_max {
        let tables = opts.recursion().tables(r).zip(exc_a_rows(r));
        for (table, d_row) in tables.take(opts.n_max) {
            let params = table.params();
            let report = brute_tables(params);
            let diff = compare(&table, &report.joint_by_csum)?;
            let found = diff.first().map(|c| format!("dp vs brute force at {c}"));
            out.push(PropertyVerdict::from_counterexample("joint_vs_oracle", found).at(params));

            let diff = compare_rows(&table.column_sums(), &d_row)?;
            let found = diff.first().map(|c| format!("joint sum vs recurrence at {c}"));
            out.push(PropertyVerdict::from_counterexample("exc_a_methods", found).at(params));

            let order = params.order();
            let masses = [table.total(), exc_dist(&table).total(), report.exc_row.total()];
            let found = masses
                .iter()
                .find(|&m| *m != order)
                .map(|m| format!("total {m} != {order}"));
            out.push(PropertyVerdict::from_counterexample("mass", found).at(params));

            if r == 1 {
                let diff = compare_rows(&eulerian_row(params.n()), &report.exc_row)?;
                let found = diff.first().map(|c| format!("eulerian vs brute force at {c}"));
                out.push(PropertyVerdict::from_counterexample("eulerian_vs_oracle", found).at(params));
            }
        }
    }
    Ok(out)
}

fn closed(opts: &CheckOptions) -> Result<Vec<PropertyVerdict>> {
    let mut out = Vec::new();
    for r in 1..=opts.r_max {
        for (idx, dp) in exc_a_rows(r).take(opts.n_max).enumerate() {
            let params = GroupParams::new(r, idx + 1)?;
            let closed = d_closed_row(params)?;
            let explicit = d_explicit_row(params)?;
            let found = compare_rows(&dp, &closed)?
                .first()
                .map(|c| format!("recurrence vs closed form at {c}"))
                .or_else(|| {
                    compare_rows(&closed, &explicit)
                        .ok()?
                        .first()
                        .map(|c| format!("closed form vs explicit sum at {c}"))
                });
            out.push(PropertyVerdict::from_counterexample("closed_triple", found).at(params));

            let at_one = d_closed(params).evaluate(&BigInt::one());
            let order = BigInt::from(params.order());
            let found = (at_one != order).then(|| format!("D(1) = {at_one} != {order}"));
            out.push(PropertyVerdict::from_counterexample("closed_mass", found).at(params));
        }
    }
    Ok(out)
}

fn symmetry(opts: &CheckOptions) -> Result<Vec<PropertyVerdict>> {
    let mut out = Vec::new();
    for r in 1..=opts.r_max {
        for table in opts.recursion().tables(r).take(opts.n_max) {
            let params = table.params();
            out.push(check_involution(params));
            out.push(check_exc_complement(params));
            out.push(check_symmetry_dist(&exc_dist(&table), params)?);
        }
    }
    Ok(out)
}

fn log_concave(opts: &CheckOptions) -> Result<Vec<PropertyVerdict>> {
    let mut out = Vec::new();
    for r in 1..=opts.r_max {
        for (idx, row) in exc_a_rows(r).take(opts.n_max).enumerate() {
            let params = GroupParams::new(r, idx + 1)?;
            let empirical = r > 2;
            let mut lc = is_log_concave(&row).at(params);
            let mut um = is_unimodal(&row).at(params);
            if empirical {
                lc.property = "log_concave_empirical".into();
                um.property = "unimodal_empirical".into();
            }
            out.push(lc);
            out.push(um);
        }
    }
    Ok(out)
}

/// Parses `term:delta`, e.g. `uncolored-stay:-1`.
pub fn parse_fault(spec: &str) -> Result<Perturbation> {
    let bad = || Error::ShapeMismatch(format!("fault must look like <term>:<delta>, got {spec:?}"));
    let (term, delta) = spec.split_once(':').ok_or_else(bad)?;
    let term = crate::exact_dist::Term::from_name(term).ok_or_else(bad)?;
    let delta = delta.parse().map_err(|_| bad())?;
    Ok(Perturbation { term, delta })
}
