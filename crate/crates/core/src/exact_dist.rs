//! Exact distribution tables by dynamic programming.
//!
//! The central object is the joint table `c_i(r, n, k)`: the number of
//! elements of `G(r, n)` with `csum = i` and `exc_A = k`. It is built layer
//! by layer in `n` from the one-digit group, where `c_i(r, 1, 0) = 1` for
//! each color `i`, with
//!
//! ```text
//! c_i(r,n,k) = (n-k)·c_i(r,n-1,k-1) + (k+1)·c_i(r,n-1,k)
//!            + Σ_{j=1}^{r-1} [ (n-k)·c_{i-j}(r,n-1,k) + (k+1)·c_{i-j}(r,n-1,k+1) ]
//! ```
//!
//! and every index outside the table contributing zero. Everything else
//! here (the `exc` tables, the `exc_A` row) is read off the joint table or
//! from the summed three-term recurrence for `d(r, n, k)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::perm::GroupParams;
use crate::table::{CountSeq, JointDistTable};

/// Eulerian numbers `a(n, k)`, `k = 0..n`. Row 0 is `[1]`, the empty
/// permutation.
pub fn eulerian_row(n: usize) -> CountSeq {
    let mut row = vec![BigUint::one()];
    for m in 2..=n {
        let mut next = vec![BigUint::zero(); m];
        for (k, slot) in next.iter_mut().enumerate() {
            if let Some(v) = row.get(k) {
                *slot += v * (k as u64 + 1);
            }
            if k >= 1 {
                if let Some(v) = row.get(k - 1) {
                    *slot += v * (m - k) as u64;
                }
            }
        }
        row = next;
    }
    CountSeq::new(row)
}

/// The four coefficient slots of the joint recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// `(n-k)·c_i(r, n-1, k-1)`
    UncoloredRise,
    /// `(k+1)·c_i(r, n-1, k)`
    UncoloredStay,
    /// `(n-k)·c_{i-j}(r, n-1, k)`
    ColoredStay,
    /// `(k+1)·c_{i-j}(r, n-1, k+1)`
    ColoredDrop,
}

impl Term {
    pub const ALL: [Term; 4] = [Term::UncoloredRise, Term::UncoloredStay, Term::ColoredStay, Term::ColoredDrop];

    pub fn name(self) -> &'static str {
        match self {
            Term::UncoloredRise => "uncolored-rise",
            Term::UncoloredStay => "uncolored-stay",
            Term::ColoredStay => "colored-stay",
            Term::ColoredDrop => "colored-drop",
        }
    }

    pub fn from_name(name: &str) -> Option<Term> {
        Term::ALL.into_iter().find(|t| t.name() == name)
    }
}

/// Shift of one recursion coefficient by `delta` (clamped at zero).
///
/// Only used to confirm that the verification suites notice a broken
/// recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perturbation {
    pub term: Term,
    pub delta: i64,
}

/// The joint recursion, optionally with one coefficient perturbed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JointRecursion {
    perturbation: Option<Perturbation>,
}

impl JointRecursion {
    pub fn standard() -> Self {
        JointRecursion { perturbation: None }
    }

    pub fn perturbed(perturbation: Perturbation) -> Self {
        JointRecursion { perturbation: Some(perturbation) }
    }

    pub fn perturbation(&self) -> Option<Perturbation> {
        self.perturbation
    }

    fn coefficient(&self, term: Term, n: usize, k: usize) -> u64 {
        let base = match term {
            Term::UncoloredRise | Term::ColoredStay => (n - k) as i64,
            Term::UncoloredStay | Term::ColoredDrop => (k + 1) as i64,
        };
        let delta = match self.perturbation {
            Some(p) if p.term == term => p.delta,
            _ => 0,
        };
        (base + delta).max(0) as u64
    }

    /// The table for `G(r, 1)`.
    pub fn base(r: usize) -> JointDistTable {
        let params = GroupParams::new(r, 1).expect("r >= 1");
        let mut table = JointDistTable::zeros(params);
        for i in 0..r {
            table.set(i, 0, BigUint::one());
        }
        table
    }

    /// The table for `n + 1` digits from the table for `n`.
    pub fn step(&self, prev: &JointDistTable) -> JointDistTable {
        let r = prev.r();
        let n = prev.n() + 1;
        let params = GroupParams::new(r, n).expect("valid params");
        let row_count = (r - 1) * n + 1;
        let zero = BigUint::zero();
        let at = |i: usize, k: usize| prev.cell(i, k).unwrap_or(&zero);
        let rows = (0..row_count)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let mut acc = at(i, k) * self.coefficient(Term::UncoloredStay, n, k);
                        if k >= 1 {
                            acc += at(i, k - 1) * self.coefficient(Term::UncoloredRise, n, k);
                        }
                        let stay = self.coefficient(Term::ColoredStay, n, k);
                        let drop = self.coefficient(Term::ColoredDrop, n, k);
                        for j in 1..r.min(i + 1) {
                            acc += at(i - j, k) * stay;
                            acc += at(i - j, k + 1) * drop;
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        JointDistTable::from_rows(params, rows, n)
    }

    /// Tables for `n = 1, 2, 3, ...` in order.
    pub fn tables(self, r: usize) -> JointTables {
        JointTables { recursion: self, r, current: None }
    }

    pub fn table(&self, params: GroupParams) -> JointDistTable {
        self.tables(params.r())
            .nth(params.n() - 1)
            .expect("the iterator is unbounded")
    }
}

#[derive(Debug, Clone)]
pub struct JointTables {
    recursion: JointRecursion,
    r: usize,
    current: Option<JointDistTable>,
}

impl Iterator for JointTables {
    type Item = JointDistTable;

    fn next(&mut self) -> Option<JointDistTable> {
        let next = match &self.current {
            None => JointRecursion::base(self.r),
            Some(prev) => self.recursion.step(prev),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// `c_i(r, n, k)` for the whole box.
pub fn joint_table(params: GroupParams) -> JointDistTable {
    JointRecursion::standard().table(params)
}

/// The closed product formula for the `k = 0` column,
///
/// ```text
/// Σ_{1 ≤ t_1 < ... < t_i ≤ n} i!·(r-1)^i·(i+1)^{n-t_i}·Π_{u=1}^{i} u^{t_u - t_{u-1} - 1},  t_0 = 0.
/// ```
///
/// Not used by the DP. Whether the value counts elements by `csum = i` or by
/// `i` colored positions is settled against brute force in
/// [`crate::properties::diagnose_initial_condition`]. Zero for `i > n`.
pub fn initial_condition_formula(r: usize, n: usize, i: usize) -> BigUint {
    if i > n {
        return BigUint::zero();
    }
    // Σ over increasing tuples of Π u^{gap}, then the (i+1)^{n - t_i} tail.
    fn walk(n: usize, i: usize, u: usize, prev: usize, acc: &BigUint, total: &mut BigUint) {
        if u > i {
            *total += acc * BigUint::from(i + 1).pow((n - prev) as u32);
            return;
        }
        // leave room for the remaining i - u positions
        for t in prev + 1..=n - (i - u) {
            let gap = (t - prev - 1) as u32;
            let next = acc * BigUint::from(u).pow(gap);
            walk(n, i, u + 1, t, &next, total);
        }
    }
    let mut total = BigUint::zero();
    walk(n, i, 1, 0, &BigUint::one(), &mut total);
    let factorial: BigUint = (1..=i as u64).product();
    total * factorial * BigUint::from(r - 1).pow(i as u32)
}

/// `b_i(r, n, k) = c_i(r, n, (k - i)/r)` over `i ∈ 0..=(r-1)n`, `k ∈ 0..rn`.
pub fn exc_joint(joint: &JointDistTable) -> JointDistTable {
    let params = joint.params();
    let (r, n) = (params.r(), params.n());
    let mut out = JointDistTable::with_shape(params, joint.row_count(), r * n);
    for (i, k_a, v) in joint.cells() {
        let k = r * k_a + i;
        if k < r * n {
            out.set(i, k, v.clone());
        }
    }
    out
}

/// `b(r, n, k)`: the full `exc` distribution, summing `b_i` over every
/// attainable `csum` value `0..=(r-1)n`.
pub fn exc_dist(joint: &JointDistTable) -> CountSeq {
    exc_joint(joint).column_sums()
}

/// How to compute `d(r, n, ·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExcAMethod {
    /// Column sums of the joint table.
    SumJoint,
    /// The three-term recurrence in `n`.
    Recurrence,
}

/// `d(r, n, k)` for `k = 0..n`.
pub fn exc_a_dist(params: GroupParams, method: ExcAMethod) -> CountSeq {
    match method {
        ExcAMethod::SumJoint => joint_table(params).column_sums(),
        ExcAMethod::Recurrence => exc_a_rows(params.r())
            .nth(params.n() - 1)
            .expect("the iterator is unbounded"),
    }
}

/// `d(r, n, ·)` for `n = 1, 2, ...` from `d(r, 1, 0) = r` and
///
/// ```text
/// d(r,n,k) = (n-k)·d(r,n-1,k-1) + (k+1+(r-1)(n-k))·d(r,n-1,k) + (k+1)(r-1)·d(r,n-1,k+1).
/// ```
pub fn exc_a_rows(r: usize) -> impl Iterator<Item = CountSeq> {
    assert!(r >= 1, "r must be positive");
    std::iter::successors(Some(CountSeq::new(vec![BigUint::from(r)])), move |prev| {
        let n = prev.len() + 1;
        let zero = BigUint::zero();
        let at = |k: usize| prev.values().get(k).unwrap_or(&zero);
        let row = (0..n)
            .map(|k| {
                let mut acc = at(k) * (k + 1 + (r - 1) * (n - k)) as u64;
                if k >= 1 {
                    acc += at(k - 1) * (n - k) as u64;
                }
                acc += at(k + 1) * ((k + 1) * (r - 1)) as u64;
                acc
            })
            .collect();
        Some(CountSeq::new(row))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(r: usize, n: usize) -> GroupParams {
        GroupParams::new(r, n).unwrap()
    }

    fn seq(v: &[u64]) -> CountSeq {
        CountSeq::from(v.to_vec())
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn eulerian_small_rows() {
        assert_eq!(eulerian_row(0), seq(&[1]));
        assert_eq!(eulerian_row(1), seq(&[1]));
        assert_eq!(eulerian_row(2), seq(&[1, 1]));
        assert_eq!(eulerian_row(4), seq(&[1, 11, 11, 1]));
        assert_eq!(eulerian_row(5), seq(&[1, 26, 66, 26, 1]));
    }

    #[test]
    fn joint_b1_b2() {
        let b1 = joint_table(g(2, 1));
        assert_eq!(b1.get(0, 0), big(1));
        assert_eq!(b1.get(1, 0), big(1));
        let b2 = joint_table(g(2, 2));
        let expected = [(0, 0, 1), (0, 1, 1), (1, 0, 3), (1, 1, 1), (2, 0, 2), (2, 1, 0)];
        for (i, k, v) in expected {
            assert_eq!(b2.get(i, k), big(v), "c_{i}(2,{k})");
        }
        assert_eq!(b2.row_count(), 3);
        assert_eq!(b2.col_count(), 2);
    }

    #[test]
    fn joint_r1_is_eulerian() {
        for n in 1..=9 {
            let t = joint_table(g(1, n));
            assert_eq!(t.row_count(), 1);
            assert_eq!(t.row(0), eulerian_row(n));
        }
    }

    #[test]
    fn mass_and_support() {
        for r in 1..=5 {
            for (idx, t) in JointRecursion::standard().tables(r).take(12).enumerate() {
                let n = idx + 1;
                assert_eq!(t.total(), g(r, n).order());
                assert_eq!(t.get((r - 1) * n + 1, 0), BigUint::zero());
                assert_eq!(t.get(0, n), BigUint::zero());
            }
        }
    }

    #[test]
    fn b_rows_and_joint() {
        let b2 = joint_table(g(2, 2));
        let bj = exc_joint(&b2);
        assert_eq!(bj.get(1, 1), big(3));
        assert_eq!(bj.get(2, 2), big(2));
        for i in 0..bj.row_count() {
            for k in 0..i.min(bj.col_count()) {
                assert_eq!(bj.get(i, k), BigUint::zero());
            }
        }
        assert_eq!(exc_dist(&b2), seq(&[1, 3, 3, 1]));
        assert_eq!(exc_dist(&joint_table(g(1, 4))), seq(&[1, 11, 11, 1]));
        assert_eq!(exc_dist(&joint_table(g(3, 1))), seq(&[1, 1, 1]));
        for r in 1..=4 {
            for n in 1..=8 {
                assert_eq!(exc_dist(&joint_table(g(r, n))).total(), g(r, n).order());
            }
        }
    }

    #[test]
    fn exc_a_small() {
        for r in 1..=6 {
            for method in [ExcAMethod::SumJoint, ExcAMethod::Recurrence] {
                assert_eq!(exc_a_dist(g(r, 1), method), seq(&[r as u64]));
            }
        }
        assert_eq!(exc_a_dist(g(2, 2), ExcAMethod::Recurrence), seq(&[6, 2]));
        assert_eq!(exc_a_dist(g(1, 4), ExcAMethod::Recurrence), seq(&[1, 11, 11, 1]));
    }

    #[test]
    fn exc_a_methods_agree() {
        for r in 1..=5 {
            let joint = JointRecursion::standard().tables(r);
            for (idx, (t, d)) in joint.zip(exc_a_rows(r)).take(40).enumerate() {
                assert_eq!(t.column_sums(), d, "r={r} n={}", idx + 1);
            }
        }
    }

    #[test]
    fn binary_case_follows_four_term_recursion() {
        // c_i(n,k) = (n-k)c_i(n-1,k-1) + (k+1)c_i(n-1,k) + (n-k)c_{i-1}(n-1,k) + (k+1)c_{i-1}(n-1,k+1)
        let tables: Vec<_> = JointRecursion::standard().tables(2).take(10).collect();
        for pair in tables.windows(2) {
            let (prev, cur) = (&pair[0], &pair[1]);
            let n = cur.n();
            for i in 0..cur.row_count() {
                for k in 0..n {
                    let mut expect = prev.get(i, k) * (k + 1) as u64;
                    if k >= 1 {
                        expect += prev.get(i, k - 1) * (n - k) as u64;
                    }
                    if i >= 1 {
                        expect += prev.get(i - 1, k) * (n - k) as u64 + prev.get(i - 1, k + 1) * (k + 1) as u64;
                    }
                    assert_eq!(cur.get(i, k), expect);
                }
            }
        }
    }

    #[test]
    fn initial_condition_small_values() {
        assert_eq!(initial_condition_formula(2, 1, 1), big(1));
        assert_eq!(initial_condition_formula(2, 2, 1), big(3));
        assert_eq!(initial_condition_formula(2, 2, 2), big(2));
        for r in 1..=4 {
            for n in 1..=6 {
                assert_eq!(initial_condition_formula(r, n, 0), big(1));
                assert_eq!(initial_condition_formula(r, n, n + 1), BigUint::zero());
            }
        }
    }

    #[test]
    fn initial_condition_matches_binary_k0_column() {
        for n in 1..=8 {
            let t = joint_table(g(2, n));
            for i in 0..=n {
                assert_eq!(initial_condition_formula(2, n, i), t.get(i, 0), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn perturbation_changes_tables() {
        for term in Term::ALL {
            assert_eq!(Term::from_name(term.name()), Some(term));
            let broken = JointRecursion::perturbed(Perturbation { term, delta: -1 });
            assert_ne!(broken.table(g(3, 4)), joint_table(g(3, 4)), "{term:?}");
        }
    }
}
