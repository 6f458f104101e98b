//! Stirling-number closed forms for the `exc_A` distribution.
//!
//! The generating polynomial `D_{r,n}(t) = Σ_k d(r,n,k) t^k` has the
//! expansion
//!
//! ```text
//! D_{r,n}(t) = r · Σ_{j=1}^{n} j!·S(n,j)·(t+r-1)^{j-1}·(1-t)^{n-j}
//! ```
//!
//! and satisfies
//!
//! ```text
//! D_{r,n}(t) = (rn + (n-1)(t-1))·D_{r,n-1}(t) - (t-1)(t+r-1)·D'_{r,n-1}(t).
//! ```

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::GroupParams;
use crate::poly::IntPolynomial;
use crate::table::CountSeq;

/// Rows `0..=max_n` of the Stirling triangle of the second kind, built with
/// `S(m+1, j) = j·S(m, j) + S(m, j-1)`.
#[derive(Debug, Clone)]
pub struct StirlingTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTriangle {
    pub fn new() -> Self {
        StirlingTriangle { rows: vec![vec![BigUint::one()]] }
    }

    pub fn up_to(max_n: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(max_n);
        t
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let prev = self.rows.last().unwrap();
            let m = prev.len();
            let row = (0..=m)
                .map(|j| {
                    let mut v = BigUint::zero();
                    if j < m {
                        v += &prev[j] * j as u64;
                    }
                    if j >= 1 {
                        v += &prev[j - 1];
                    }
                    v
                })
                .collect();
            self.rows.push(row);
        }
    }

    /// `S(n, j)`; zero when `j > n`. Panics if `n` exceeds the built rows.
    pub fn get(&self, n: usize, j: usize) -> BigUint {
        self.rows[n].get(j).cloned().unwrap_or_default()
    }
}

impl Default for StirlingTriangle {
    fn default() -> Self {
        Self::new()
    }
}

fn shared_triangle() -> &'static RwLock<StirlingTriangle> {
    static CACHE: OnceLock<RwLock<StirlingTriangle>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(StirlingTriangle::new()))
}

/// `S(n, j)` from a process-wide memoized triangle.
pub fn stirling2(n: usize, j: usize) -> BigUint {
    {
        let table = shared_triangle().read().unwrap_or_else(|e| e.into_inner());
        if n <= table.max_n() {
            return table.get(n, j);
        }
    }
    let mut table = shared_triangle().write().unwrap_or_else(|e| e.into_inner());
    table.extend_to(n);
    table.get(n, j)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `D_{r,n}(t)` expanded from the Stirling sum.
pub fn d_closed(params: GroupParams) -> IntPolynomial {
    let (r, n) = (params.r(), params.n());
    let shifted = IntPolynomial::linear(BigInt::from(r) - 1, 1); // t + r - 1
    let reflected = IntPolynomial::linear(1, -1); // 1 - t
    let mut sum = IntPolynomial::zero();
    for j in 1..=n {
        let weight = BigInt::from(factorial(j) * stirling2(n, j));
        let term = &shifted.pow((j - 1) as u32) * &reflected.pow((n - j) as u32);
        sum = &sum + &term.scale(&weight);
    }
    sum.scale(&BigInt::from(r))
}

/// Coefficients of [`d_closed`] as a row of length `n`.
///
/// Fails if any coefficient is negative or the degree reaches `n`.
pub fn d_closed_row(params: GroupParams) -> Result<CountSeq> {
    poly_to_row(&d_closed(params), params.n())
}

pub fn poly_to_row(poly: &IntPolynomial, len: usize) -> Result<CountSeq> {
    if poly.degree().is_some_and(|d| d >= len) {
        return Err(Error::Inconsistent(format!(
            "polynomial {poly} has degree above {}",
            len.saturating_sub(1)
        )));
    }
    (0..len)
        .map(|k| {
            let c = poly.coefficient(k);
            c.to_biguint()
                .ok_or_else(|| Error::Inconsistent(format!("coefficient of t^{k} is negative: {c}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(CountSeq::new)
}

/// `d(r,n,k) = r Σ_{j=1}^{n} Σ_{i=0}^{j-1} (-1)^{k+j-1-i} r^i j! S(n,j) C(j-1,i) C(n-1-i,k)`.
pub fn d_explicit(params: GroupParams, k: usize) -> Result<BigUint> {
    let (r, n) = (params.r(), params.n());
    let r_big = BigInt::from(r);
    let mut sum = BigInt::zero();
    for j in 1..=n {
        let weight = BigInt::from(factorial(j) * stirling2(n, j));
        let mut r_pow = BigInt::one();
        for i in 0..j {
            let magnitude = &r_pow * &weight * BigInt::from(binomial(j - 1, i) * binomial(n - 1 - i, k));
            if (k + j - 1 - i).is_multiple_of(2) {
                sum += magnitude;
            } else {
                sum -= magnitude;
            }
            r_pow *= &r_big;
        }
    }
    sum *= &r_big;
    match sum.sign() {
        Sign::Minus => Err(Error::Inconsistent(format!(
            "explicit count for G({r},{n}), k={k} came out negative: {sum}"
        ))),
        _ => Ok(sum.abs().to_biguint().expect("nonnegative")),
    }
}

/// [`d_explicit`] for every `k = 0..n`.
pub fn d_explicit_row(params: GroupParams) -> Result<CountSeq> {
    (0..params.n())
        .map(|k| d_explicit(params, k))
        .collect::<Result<Vec<_>>>()
        .map(CountSeq::new)
}

/// The right-hand side of the `n - 1 → n` polynomial recurrence.
pub fn eq2_step(r: usize, n: usize, previous: &IntPolynomial) -> IntPolynomial {
    let r_big = BigInt::from(r);
    let n_big = BigInt::from(n);
    // rn + (n-1)(t-1)
    let multiplier = IntPolynomial::linear(&r_big * &n_big - (&n_big - 1), &n_big - 1);
    // (t-1)(t+r-1)
    let damping = &IntPolynomial::linear(-1, 1) * &IntPolynomial::linear(&r_big - 1, 1);
    &(&multiplier * previous) - &(&damping * &previous.derivative())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eq2Report {
    pub r: usize,
    pub n_max: usize,
    /// Every `n` for which the identity was checked.
    pub checked: Vec<usize>,
    /// The first `n` where the closed form and the recurrence disagree.
    pub first_failure: Option<usize>,
}

impl Eq2Report {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `D_{r,n} = (rn+(n-1)(t-1))·D_{r,n-1} - (t-1)(t+r-1)·D'_{r,n-1}`
/// with both sides from the closed form, for `n = 2..=n_max`.
pub fn check_eq2(r: usize, n_max: usize) -> Result<Eq2Report> {
    let mut previous = d_closed(GroupParams::new(r, 1)?);
    let mut checked = Vec::new();
    for n in 2..=n_max {
        let current = d_closed(GroupParams::new(r, n)?);
        checked.push(n);
        if eq2_step(r, n, &previous) != current {
            return Ok(Eq2Report { r, n_max, checked, first_failure: Some(n) });
        }
        previous = current;
    }
    Ok(Eq2Report { r, n_max, checked, first_failure: None })
}

/// JSON document `{r, n, coefficients: [decimal strings]}`.
pub fn poly_json(params: GroupParams, poly: &IntPolynomial) -> serde_json::Value {
    #[derive(Serialize)]
    struct Doc {
        r: usize,
        n: usize,
        coefficients: Vec<String>,
    }
    serde_json::to_value(Doc {
        r: params.r(),
        n: params.n(),
        coefficients: poly.coefficients().iter().map(|c| c.to_str_radix(10)).collect(),
    })
    .expect("polynomial serializes")
}
