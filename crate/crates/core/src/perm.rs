//! Elements of the colored permutation group `G(r, n) = Z_r ≀ S_n`.
//!
//! An element is stored in window notation: the images of the color-0
//! letters `1, ..., n`. Images of colored letters follow from the
//! equivariance rule `π(i^α) = j^(β+α)` whenever `π(i) = j^β`.
//!
//! Positions and values are one-indexed in every public signature.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, ParseError, Result};

/// The pair `(r, n)`: `r` colors, `n` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    r: usize,
    n: usize,
}

impl GroupParams {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::InvalidParams { r, n });
        }
        Ok(GroupParams { r, n })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G(r, n)| = r^n · n!`.
    pub fn order(&self) -> BigUint {
        let mut total = BigUint::from(self.r).pow(self.n as u32);
        for m in 2..=self.n {
            total *= m;
        }
        total
    }

    /// Size of the extended alphabet, `r · n`.
    pub fn alphabet_len(&self) -> usize {
        self.r * self.n
    }

    /// Every letter of the extended alphabet, in ascending color order.
    pub fn alphabet(&self) -> impl Iterator<Item = ColoredLetter> + '_ {
        (0..self.r)
            .rev()
            .flat_map(move |color| (1..=self.n).map(move |value| ColoredLetter::new(value, color)))
    }

    pub fn contains(&self, x: ColoredLetter) -> bool {
        (1..=self.n).contains(&x.value) && x.color < self.r
    }
}

/// A letter `value^color` of the extended alphabet.
///
/// Ordered by the color order: higher colors are smaller, and within one
/// color the values are ordered as integers. So for `r = 3, n = 3` the
/// order is `1^2 < 2^2 < 3^2 < 1^1 < ... < 1 < 2 < 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredLetter {
    pub value: usize,
    pub color: usize,
}

impl ColoredLetter {
    pub const fn new(value: usize, color: usize) -> Self {
        ColoredLetter { value, color }
    }

    pub const fn uncolored(value: usize) -> Self {
        ColoredLetter { value, color: 0 }
    }
}

impl Ord for ColoredLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .color
            .cmp(&self.color)
            .then_with(|| self.value.cmp(&other.value))
    }
}

impl PartialOrd for ColoredLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.color == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}^{}", self.value, self.color)
        }
    }
}

impl serde::Serialize for ColoredLetter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Compare two letters in the color order.
pub fn compare(x: ColoredLetter, y: ColoredLetter) -> Ordering {
    x.cmp(&y)
}

/// An element of `G(r, n)` in window notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    params: GroupParams,
    window: Vec<ColoredLetter>,
}

impl ColoredPermutation {
    pub fn identity(params: GroupParams) -> Self {
        ColoredPermutation {
            params,
            window: (1..=params.n).map(ColoredLetter::uncolored).collect(),
        }
    }

    /// Build from a window, validating that values form a permutation of
    /// `1..=n` and colors lie in `0..r`.
    pub fn from_window(r: usize, window: Vec<ColoredLetter>) -> Result<Self> {
        if window.is_empty() {
            return Err(ParseError::Empty.into());
        }
        let params = GroupParams::new(r, window.len())?;
        let n = params.n;
        let mut seen = vec![false; n + 1];
        for (idx, letter) in window.iter().enumerate() {
            let position = idx + 1;
            if !(1..=n).contains(&letter.value) {
                return Err(ParseError::ValueOutOfRange { position, value: letter.value, n }.into());
            }
            if letter.color >= r {
                return Err(ParseError::ColorOutOfRange { position, color: letter.color, r }.into());
            }
            if std::mem::replace(&mut seen[letter.value], true) {
                return Err(ParseError::DuplicateValue { position, value: letter.value }.into());
            }
        }
        Ok(ColoredPermutation { params, window })
    }

    /// Build from the uncolored permutation `τ` (one-indexed values) and the
    /// color vector `c`, so that `window[i] = τ(i)^{c_i}`.
    pub fn from_parts(r: usize, tau: &[usize], colors: &[usize]) -> Result<Self> {
        if tau.len() != colors.len() {
            return Err(Error::ShapeMismatch(format!(
                "permutation has {} entries but color vector has {}",
                tau.len(),
                colors.len()
            )));
        }
        let window = tau
            .iter()
            .zip(colors)
            .map(|(&v, &c)| ColoredLetter::new(v, c))
            .collect();
        Self::from_window(r, window)
    }

    /// Parse the textual window format: comma-separated `v` or `v^c` tokens.
    pub fn parse(text: &str, r: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ParseError::Empty.into());
        }
        let n = text.split(',').count();
        GroupParams::new(r, n)?;
        let mut window = Vec::with_capacity(n);
        for (idx, raw) in text.split(',').enumerate() {
            let position = idx + 1;
            let token = raw.trim();
            let malformed = || ParseError::Malformed { position, token: token.to_string() };
            let (value, color) = match token.split_once('^') {
                Some((v, c)) => (parse_digits(v).ok_or_else(malformed)?, parse_digits(c).ok_or_else(malformed)?),
                None => (parse_digits(token).ok_or_else(malformed)?, 0),
            };
            window.push(ColoredLetter::new(value, color));
        }
        Self::from_window(r, window)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn r(&self) -> usize {
        self.params.r
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn window(&self) -> &[ColoredLetter] {
        &self.window
    }

    /// `π(i)` for the uncolored letter at one-indexed position `i`.
    pub fn image(&self, position: usize) -> ColoredLetter {
        self.window[position - 1]
    }

    /// The underlying permutation `τ` as a word of one-indexed values.
    pub fn tau(&self) -> Vec<usize> {
        self.window.iter().map(|x| x.value).collect()
    }

    /// The color vector `c`, with `c_i` the color of `window[i]`.
    pub fn colors(&self) -> Vec<usize> {
        self.window.iter().map(|x| x.color).collect()
    }

    /// The value-indexed vector `z` of the `(z, τ)` presentation, for which
    /// the product rule reads `(z, τ)(z', τ') = (z_j + z'_{τ⁻¹(j)}, τ∘τ')`.
    ///
    /// `z_j` is the color that `π⁻¹` attaches to `τ⁻¹(j)`, so `c(π) = z(π⁻¹)`.
    /// Returned zero-indexed: entry `j - 1` holds `z_j`.
    pub fn z_vector(&self) -> Vec<usize> {
        let r = self.params.r;
        let mut z = vec![0; self.params.n];
        for x in &self.window {
            z[x.value - 1] = (r - x.color) % r;
        }
        z
    }

    fn from_z(params: GroupParams, tau: &[usize], z: &[usize]) -> Self {
        let r = params.r;
        let window = tau
            .iter()
            .map(|&v| ColoredLetter::new(v, (r - z[v - 1] % r) % r))
            .collect();
        ColoredPermutation { params, window }
    }

    /// `π(x)` on the extended alphabet.
    pub fn apply_extended(&self, x: ColoredLetter) -> ColoredLetter {
        debug_assert!(self.params.contains(x));
        let image = self.window[x.value - 1];
        ColoredLetter::new(image.value, (image.color + x.color) % self.params.r)
    }

    /// Checked variant of [`apply_extended`](Self::apply_extended).
    pub fn try_apply_extended(&self, x: ColoredLetter) -> Result<ColoredLetter> {
        if !self.params.contains(x) {
            return Err(Error::LetterOutOfRange {
                value: x.value,
                color: x.color,
                r: self.params.r,
                n: self.params.n,
            });
        }
        Ok(self.apply_extended(x))
    }

    /// The product `self · other`, acting as `x ↦ self(other(x))`.
    pub fn multiply(&self, other: &ColoredPermutation) -> Result<ColoredPermutation> {
        if self.params != other.params {
            return Err(Error::ParamMismatch(
                self.params.r,
                self.params.n,
                other.params.r,
                other.params.n,
            ));
        }
        let r = self.params.r;
        let tau = self.tau();
        let tau_prime = other.tau();
        let z = self.z_vector();
        let z_prime = other.z_vector();
        let mut tau_inv = vec![0; tau.len() + 1];
        for (idx, &v) in tau.iter().enumerate() {
            tau_inv[v] = idx + 1;
        }
        let product_z: Vec<usize> = (1..=self.params.n)
            .map(|j| (z[j - 1] + z_prime[tau_inv[j] - 1]) % r)
            .collect();
        let product_tau: Vec<usize> = tau_prime.iter().map(|&v| tau[v - 1]).collect();
        Ok(Self::from_z(self.params, &product_tau, &product_z))
    }

    pub fn inverse(&self) -> ColoredPermutation {
        let r = self.params.r;
        let mut window = vec![ColoredLetter::uncolored(0); self.params.n];
        for (idx, x) in self.window.iter().enumerate() {
            window[x.value - 1] = ColoredLetter::new(idx + 1, (r - x.color) % r);
        }
        ColoredPermutation { params: self.params, window }
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(idx, x)| x.value == idx + 1 && x.color == 0)
    }
}

fn parse_digits(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, x) in self.window.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Window text for `p`; colors are written only when nonzero.
pub fn format(p: &ColoredPermutation) -> String {
    p.to_string()
}

/// Deterministic traversal of `G(r, n)`.
///
/// Elements come in lexicographic order of the word `τ`, and for each `τ`
/// the color vector counts upward as a base-`r` number with the first
/// position most significant.
#[derive(Debug, Clone)]
pub struct Enumeration {
    params: GroupParams,
    tau: Vec<usize>,
    colors: Vec<usize>,
    /// When set, stop once `τ(1)` moves past this value.
    first_value: Option<usize>,
    done: bool,
}

impl Enumeration {
    pub fn new(params: GroupParams) -> Self {
        Enumeration {
            params,
            tau: (1..=params.n).collect(),
            colors: vec![0; params.n],
            first_value: None,
            done: false,
        }
    }

    /// The slice of the enumeration whose elements have `τ(1) = first`.
    ///
    /// The slices for `first = 1..=n` partition the group, and
    /// concatenating them in that order reproduces [`Enumeration::new`].
    pub fn with_first_value(params: GroupParams, first: usize) -> Self {
        assert!((1..=params.n).contains(&first), "first value {first} out of range");
        let mut tau = Vec::with_capacity(params.n);
        tau.push(first);
        tau.extend((1..=params.n).filter(|&v| v != first));
        Enumeration {
            params,
            tau,
            colors: vec![0; params.n],
            first_value: Some(first),
            done: false,
        }
    }

    /// One slice per possible first value, in enumeration order.
    pub fn partitions(params: GroupParams) -> Vec<Enumeration> {
        (1..=params.n).map(|v| Self::with_first_value(params, v)).collect()
    }

    fn advance(&mut self) {
        let r = self.params.r;
        for c in self.colors.iter_mut().rev() {
            *c += 1;
            if *c < r {
                return;
            }
            *c = 0;
        }
        if !next_permutation(&mut self.tau) {
            self.done = true;
            return;
        }
        if let Some(first) = self.first_value {
            if self.tau[0] != first {
                self.done = true;
            }
        }
    }
}

impl Iterator for Enumeration {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.done {
            return None;
        }
        let window = self
            .tau
            .iter()
            .zip(&self.colors)
            .map(|(&v, &c)| ColoredLetter::new(v, c))
            .collect();
        let item = ColoredPermutation { params: self.params, window };
        self.advance();
        Some(item)
    }
}

/// Every element of `G(r, n)`; see [`Enumeration`] for the order.
pub fn enumerate(params: GroupParams) -> Enumeration {
    Enumeration::new(params)
}

/// Rearranges into the next word in lexicographic order; false at the last.
fn next_permutation(word: &mut [usize]) -> bool {
    let Some(pivot) = word.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = word.iter().rposition(|&x| x > word[pivot]).unwrap();
    word.swap(pivot, successor);
    word[pivot + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn g(r: usize, n: usize) -> GroupParams {
        GroupParams::new(r, n).unwrap()
    }

    fn sigma() -> ColoredPermutation {
        ColoredPermutation::parse("3,1^1,2^2", 3).unwrap()
    }

    #[test]
    fn identity_window() {
        let id = ColoredPermutation::identity(g(3, 3));
        assert_eq!(id.to_string(), "1,2,3");
        assert!(id.is_identity());
        assert_eq!(ColoredPermutation::identity(g(1, 1)).window(), &[ColoredLetter::uncolored(1)]);
    }

    #[test]
    fn invalid_params() {
        assert_eq!(GroupParams::new(0, 3), Err(Error::InvalidParams { r: 0, n: 3 }));
        assert!(GroupParams::new(2, 0).is_err());
    }

    #[test]
    fn color_order() {
        let a = ColoredLetter::new(1, 2);
        let b = ColoredLetter::new(3, 2);
        let c = ColoredLetter::new(1, 1);
        assert!(a < b && b < c);
        assert_eq!(compare(a, a), Ordering::Equal);
        let params = g(3, 3);
        let letters: Vec<_> = params.alphabet().collect();
        assert_eq!(letters.first(), Some(&ColoredLetter::new(1, 2)));
        assert_eq!(letters.last(), Some(&ColoredLetter::new(3, 0)));
        assert!(letters.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn extended_form_row() {
        // bottom row of the extended form of σ = (3, 1^1, 2^2), columns in color order
        let expected = ["3^2", "1", "2^1", "3^1", "1^2", "2", "3", "1^1", "2^2"];
        let s = sigma();
        let row: Vec<String> = s
            .params()
            .alphabet()
            .map(|x| s.apply_extended(x).to_string())
            .collect();
        assert_eq!(row, expected);
        assert_eq!(s.apply_extended(ColoredLetter::new(1, 1)), ColoredLetter::new(3, 1));
        assert_eq!(s.apply_extended(ColoredLetter::new(2, 2)), ColoredLetter::new(1, 0));
    }

    #[test]
    fn try_apply_rejects_foreign_letter() {
        assert!(sigma().try_apply_extended(ColoredLetter::new(4, 0)).is_err());
        assert!(sigma().try_apply_extended(ColoredLetter::new(1, 3)).is_err());
    }

    #[test]
    fn parse_errors_are_distinct() {
        use ParseError::*;
        let err = |s: &str, r| match ColoredPermutation::parse(s, r) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("2,2,1", 2), DuplicateValue { position: 2, value: 2 });
        assert_eq!(err("1,4,2", 2), ValueOutOfRange { position: 2, value: 4, n: 3 });
        assert_eq!(err("1,2^3,3", 3), ColorOutOfRange { position: 2, color: 3, r: 3 });
        assert!(matches!(err("1,x,3", 3), Malformed { position: 2, .. }));
        assert!(matches!(err("1,2^,3", 3), Malformed { position: 2, .. }));
        assert!(matches!(err("1,-2,3", 3), Malformed { position: 2, .. }));
        assert!(matches!(err("0,1", 3), ValueOutOfRange { position: 1, .. }));
        assert_eq!(err("  ", 3), Empty);
    }

    #[test]
    fn parse_identity_any_r() {
        for r in 1..5 {
            let p = ColoredPermutation::parse("1,2,3", r).unwrap();
            assert_eq!(p, ColoredPermutation::identity(g(r, 3)));
        }
        assert_eq!(format(&sigma()), "3,1^1,2^2");
        assert_eq!(ColoredPermutation::parse(" 3 , 1^1 ,2^2", 3).unwrap(), sigma());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(g(1, 3)).count(), 6);
        assert_eq!(enumerate(g(2, 2)).count(), 8);
        assert_eq!(enumerate(g(3, 3)).count(), 162);
        let distinct: HashSet<_> = enumerate(g(3, 3)).collect();
        assert_eq!(distinct.len(), 162);
    }

    #[test]
    fn enumeration_order() {
        let first: Vec<String> = enumerate(g(2, 2)).map(|p| p.to_string()).collect();
        assert_eq!(
            first,
            ["1,2", "1,2^1", "1^1,2", "1^1,2^1", "2,1", "2,1^1", "2^1,1", "2^1,1^1"]
        );
        let params = g(3, 4);
        let joined: Vec<_> = Enumeration::partitions(params).into_iter().flatten().collect();
        let straight: Vec<_> = enumerate(params).collect();
        assert_eq!(joined, straight);
    }

    #[test]
    fn multiply_matches_composition() {
        let params = g(2, 2);
        for a in enumerate(params) {
            for b in enumerate(params) {
                let ab = a.multiply(&b).unwrap();
                for x in params.alphabet() {
                    assert_eq!(ab.apply_extended(x), a.apply_extended(b.apply_extended(x)));
                }
            }
        }
    }

    #[test]
    fn associativity_on_b2() {
        let params = g(2, 2);
        let all: Vec<_> = enumerate(params).collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    let left = a.multiply(b).unwrap().multiply(c).unwrap();
                    let right = a.multiply(&b.multiply(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn identity_and_inverse_laws() {
        for r in 1..=3 {
            for n in 1..=3 {
                let id = ColoredPermutation::identity(g(r, n));
                assert_eq!(id.inverse(), id);
                for p in enumerate(g(r, n)) {
                    assert_eq!(p.multiply(&id).unwrap(), p);
                    assert_eq!(id.multiply(&p).unwrap(), p);
                    assert!(p.multiply(&p.inverse()).unwrap().is_identity());
                    assert!(p.inverse().multiply(&p).unwrap().is_identity());
                    assert_eq!(p.inverse().inverse(), p);
                }
            }
        }
    }

    #[test]
    fn multiply_rejects_mismatch() {
        let a = ColoredPermutation::identity(g(2, 3));
        let b = ColoredPermutation::identity(g(3, 3));
        assert_eq!(a.multiply(&b), Err(Error::ParamMismatch(2, 3, 3, 3)));
    }

    #[test]
    fn inverse_of_sigma_undoes_action() {
        let s = sigma();
        let inv = s.inverse();
        for x in s.params().alphabet() {
            assert_eq!(inv.apply_extended(s.apply_extended(x)), x);
        }
    }

    #[test]
    fn extended_action_is_equivariant_bijection() {
        for r in 1..=3 {
            for n in 1..=3 {
                let params = g(r, n);
                for p in enumerate(params) {
                    let images: HashSet<_> = params.alphabet().map(|x| p.apply_extended(x)).collect();
                    assert_eq!(images.len(), params.alphabet_len());
                    for x in params.alphabet() {
                        let y = p.apply_extended(x);
                        let shifted = p.apply_extended(ColoredLetter::new(x.value, (x.color + 1) % r));
                        assert_eq!(shifted, ColoredLetter::new(y.value, (y.color + 1) % r));
                    }
                }
            }
        }
    }

    #[test]
    fn colors_of_p_are_z_of_inverse() {
        for r in 1..=3 {
            for n in 1..=3 {
                for p in enumerate(g(r, n)) {
                    assert_eq!(p.colors(), p.inverse().z_vector());
                }
            }
        }
    }

    #[test]
    fn next_permutation_walks_all_words() {
        let mut w = vec![1, 2, 3];
        let mut seen = vec![w.clone()];
        while next_permutation(&mut w) {
            seen.push(w.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![3, 2, 1]);
    }
}
