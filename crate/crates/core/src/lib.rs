//! Exact excedance statistics on the colored permutation groups
//! `G(r, n) = Z_r ≀ S_n`.
//!
//! Distributions are available three ways that never share code paths:
//!
//! * [`oracle`]: exhaustive enumeration of the group.
//! * [`exact_dist`]: dynamic programming over `n`.
//! * [`closed_form`]: Stirling-number expansions of the generating polynomial.
//!
//! [`properties`] and [`verify`] cross-check them and test the structural
//! results (symmetry of `exc`, log-concavity of `exc_A`).

pub mod closed_form;
pub mod error;
pub mod exact_dist;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod properties;
pub mod statistics;
pub mod table;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use perm::{ColoredLetter, ColoredPermutation, Enumeration, GroupParams};
pub use poly::IntPolynomial;
pub use properties::PropertyVerdict;
pub use statistics::StatSummary;
pub use table::{CountSeq, JointDistTable, TableDiff};
