//! Exact rational arithmetic and sparse multivariate polynomials over the
//! loop-space alphabet `z^i_j` (coordinate `i`, conformal degree `j`).
//!
//! The alphabet is unbounded: a variable exists as soon as some monomial
//! mentions it. All values are immutable once built and every polynomial is
//! kept in a canonical form (graded reverse lexicographic term order, no zero
//! coefficients), so structural equality is mathematical equality.

mod monomial;
mod poly;

pub use monomial::{LoopVar, Monomial};
pub use poly::{LoopPoly, PolyError};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}
