//! Exact arithmetic substrate.
//!
//! Scalars are GMP-backed: [`ExactInteger`] never overflows and
//! [`ExactRational`] is kept canonical (lowest terms, positive denominator)
//! after every operation, so equality is structural.

mod laurent;
mod matrix;
mod series;

pub use laurent::{laurent_coeff, laurent_mul, LaurentPoly};
pub use matrix::{det_exact, RationalMatrix};
pub use series::{series_mul, TruncatedSeries};

use crate::error::{Error, Result};

pub type ExactInteger = rug::Integer;
pub type ExactRational = rug::Rational;

/// `C(a, b)` with the combinatorial convention: zero outside `0 <= b <= a`.
///
/// A negative upper index is rejected: no formula in this crate needs the
/// generalised binomial, so one showing up means an indexing bug upstream.
pub fn binomial(a: i64, b: i64) -> Result<ExactInteger> {
    if a < 0 {
        return Err(Error::Domain(format!(
            "binomial upper index {a} is negative"
        )));
    }
    if b < 0 || b > a {
        return Ok(ExactInteger::new());
    }
    let a = u32::try_from(a).map_err(|_| Error::Domain(format!("binomial index {a} too large")))?;
    Ok(ExactInteger::from(ExactInteger::binomial_u(a, b as u32)))
}

pub(crate) fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
