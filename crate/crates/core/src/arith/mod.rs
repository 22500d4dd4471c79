//! Exact substrate: rationals, dense univariate polynomials, rational
//! intervals, complex rectangles and certified elementary functions.

pub mod interval;
pub mod linalg;
pub mod poly;
pub mod rect;
pub mod transcendental;

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use interval::RationalInterval;
pub use num_rational::BigRational;
pub use poly::{IntPolynomial, RatPolynomial};
pub use rect::ComplexRectangle;

/// Shorthand for a small rational constant.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, `"-p/q"` or an integer literal into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::InvalidInput("empty rational literal".into()));
    }
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` (or integer) rendering, the inverse of [`parse_rational`].
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Largest multiple of `2^-bits` that is `<= x`.
pub fn floor_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scaled = x.numer() << bits;
    BigRational::new(scaled.div_floor(x.denom()), pow2(bits))
}

/// Smallest multiple of `2^-bits` that is `>= x`.
pub fn ceil_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let scaled = x.numer() << bits;
    let (q, r) = scaled.div_mod_floor(x.denom());
    let q = if r.is_zero() { q } else { q + 1 };
    BigRational::new(q, pow2(bits))
}

/// Nearest multiple of `2^-bits` (ties toward +inf). Used only for
/// approximate centers; never for enclosure endpoints.
pub fn round_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let half = BigRational::new(BigInt::one(), pow2(bits + 1));
    floor_dyadic(&(x + half), bits)
}

/// Rough `log2 |x|`, accurate to within one; `None` for zero.
pub fn log2_estimate(x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(x.numer().bits() as i64 - x.denom().bits() as i64)
}

/// Bits of absolute precision needed to resolve quantities of size `w`.
pub(crate) fn bits_for_width(w: &BigRational) -> u64 {
    match log2_estimate(w) {
        None => 64,
        Some(e) => (-e).max(0) as u64 + 64,
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if x.is_zero() {
        return 0.0;
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let sn = (nb - 64).max(0);
    let sd = (db - 64).max(0);
    let n = (x.numer() >> sn as usize).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> sd as usize).to_f64().unwrap_or(1.0);
    (n / d) * 2f64.powi((sn - sd).clamp(-4000, 4000) as i32)
}

pub(crate) fn f64_to_rational(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 12 ").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = rat(1, 3);
        let lo = floor_dyadic(&x, 10);
        let hi = ceil_dyadic(&x, 10);
        assert!(lo <= x && x <= hi);
        assert_eq!(&hi - &lo, rat(1, 1024));
        let y = rat(-5, 7);
        assert!(floor_dyadic(&y, 3) <= y && y <= ceil_dyadic(&y, 3));
        assert_eq!(ceil_dyadic(&rat(3, 4), 2), rat(3, 4));
    }
}
