//! Exact conversions from real-valued parameters to integer limits.
//!
//! Parameters arrive as `f64`, and every finite `f64` is a dyadic rational.
//! Integer limits such as `⌊x²/y⌋` are derived from that rational exactly,
//! so no floating rounding can move an element in or out of a set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) fn rational(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::domain(format!("{v} is not finite")))
}

pub(crate) fn floor_to_u128(r: &BigRational) -> Result<u128> {
    if r < &BigRational::zero() {
        return Err(Error::domain("negative limit"));
    }
    let f: BigInt = r.floor().to_integer();
    f.to_u128()
        .ok_or_else(|| Error::overflow(format!("limit {f} exceeds 128-bit width")))
}

/// `⌊v⌋` for a nonnegative finite real.
pub fn floor_u128(v: f64) -> Result<u128> {
    floor_to_u128(&rational(v)?)
}

/// `⌊x²⌋`, exact.
pub fn floor_square(x: f64) -> Result<u128> {
    let r = rational(x)?;
    floor_to_u128(&(&r * &r))
}

/// `⌊x²/y⌋`, exact.
pub fn floor_square_over(x: f64, y: f64) -> Result<u128> {
    if !(y > 0.0) {
        return Err(Error::domain(format!("divisor {y} must be positive")));
    }
    let r = rational(x)?;
    floor_to_u128(&(&r * &r / rational(y)?))
}

/// Whether `d > x/y`, decided as `d·y > x` over the rationals.
pub fn exceeds_ratio(d: u128, x: f64, y: f64) -> Result<bool> {
    let lhs = BigRational::from_integer(BigInt::from(d)) * rational(y)?;
    Ok(lhs > rational(x)?)
}
