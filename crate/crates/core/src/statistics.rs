//! Excedance statistics on a single colored permutation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{ColoredLetter, ColoredPermutation};

/// Sum of the window colors, taken over the integers (not mod `r`).
///
/// For `r = 2` this is `neg`, the number of negative entries.
pub fn csum(p: &ColoredPermutation) -> usize {
    p.window().iter().map(|x| x.color).sum()
}

/// Number of positions carrying a nonzero color.
pub fn colored_count(p: &ColoredPermutation) -> usize {
    p.window().iter().filter(|x| x.color != 0).count()
}

/// Positions `i ∈ [n-1]` with `π(i) > i` in the color order.
pub fn exc_a_set(p: &ColoredPermutation) -> Vec<usize> {
    let n = p.n();
    (1..n)
        .filter(|&i| p.image(i) > ColoredLetter::uncolored(i))
        .collect()
}

pub fn exc_a(p: &ColoredPermutation) -> usize {
    let n = p.n();
    (1..n)
        .filter(|&i| p.image(i) > ColoredLetter::uncolored(i))
        .count()
}

/// Letters `x` of the extended alphabet with `π(x) > x`, in color order.
pub fn exc_set(p: &ColoredPermutation) -> Vec<ColoredLetter> {
    p.params()
        .alphabet()
        .filter(|&x| p.apply_extended(x) > x)
        .collect()
}

/// `|Exc(π)|` by scanning all `r·n` letters.
pub fn exc(p: &ColoredPermutation) -> usize {
    p.params()
        .alphabet()
        .filter(|&x| p.apply_extended(x) > x)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatSummary {
    pub exc: usize,
    #[serde(rename = "exc_A")]
    pub exc_a: usize,
    pub csum: usize,
    pub exc_set: Vec<ColoredLetter>,
    #[serde(rename = "exc_A_set")]
    pub exc_a_set: Vec<usize>,
}

/// All statistics of `p`, each computed on its own, with
/// `exc = r·exc_A + csum` checked before returning.
pub fn summarize(p: &ColoredPermutation) -> Result<StatSummary> {
    let exc_set = exc_set(p);
    let exc_a_set = exc_a_set(p);
    let csum = csum(p);
    let summary = StatSummary {
        exc: exc_set.len(),
        exc_a: exc_a_set.len(),
        csum,
        exc_set,
        exc_a_set,
    };
    if summary.exc != p.r() * summary.exc_a + summary.csum {
        return Err(Error::Inconsistent(format!(
            "exc({p}) = {} but r·exc_A + csum = {}·{} + {}",
            summary.exc,
            p.r(),
            summary.exc_a,
            summary.csum
        )));
    }
    Ok(summary)
}
