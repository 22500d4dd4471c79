//! Certified natural logarithm and exponential on rationals, a handful of
//! 60-digit constants, and decimal rendering of enclosures.
//!
//! All series are summed in dyadic interval arithmetic with outward
//! rounding, and every truncation is covered by an explicit tail bound.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::RationalInterval;
use super::{ceil_dyadic, floor_dyadic, int, pow2, rat};
use crate::error::{Error, Result};

const LN2_DIGITS: &str = "0.693147180559945309417232121458176568075500134360255254120680";
const LN10_DIGITS: &str = "2.302585092994045684017991454684364207601101488628772976033328";
const PI_DIGITS: &str = "3.141592653589793238462643383279502884197169399375105820974944";
const E_DIGITS: &str = "2.718281828459045235360287471352662497757247093699959574966967";

fn decimal_constant(digits: &str) -> RationalInterval {
    let (whole, frac) = digits.split_once('.').expect("constant has a fractional part");
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let n: BigInt = format!("{whole}{frac}").parse().expect("constant digits");
    let mid = BigRational::new(n, scale.clone());
    let slack = BigRational::new(BigInt::one(), scale);
    RationalInterval::from_sorted(&mid - &slack, &mid + &slack)
}

macro_rules! constant {
    ($(#[$doc:meta])* $name:ident, $digits:ident) => {
        $(#[$doc])*
        pub fn $name() -> &'static RationalInterval {
            static CELL: OnceLock<RationalInterval> = OnceLock::new();
            CELL.get_or_init(|| decimal_constant($digits))
        }
    };
}

constant!(
    /// `ln 2`, enclosed to within `10^-60`.
    ln2_constant,
    LN2_DIGITS
);
constant!(
    /// `ln 10`, enclosed to within `10^-60`.
    ln10_constant,
    LN10_DIGITS
);
constant!(
    /// `pi`, enclosed to within `10^-60`.
    pi_constant,
    PI_DIGITS
);
constant!(
    /// Euler's number, enclosed to within `10^-60`.
    e_constant,
    E_DIGITS
);

fn round_iv(x: &RationalInterval, bits: u64) -> RationalInterval {
    x.round_outward(bits)
}

/// `2 atanh(t)` for `0 <= t <= 1/3`, to absolute accuracy about `2^-bits`.
fn two_atanh(t: &BigRational, bits: u64) -> RationalInterval {
    debug_assert!(!t.is_negative() && t <= &rat(1, 3));
    let work = bits + 16;
    if t.is_zero() {
        return RationalInterval::zero();
    }
    let t_iv = RationalInterval::from_sorted(floor_dyadic(t, work), ceil_dyadic(t, work));
    let t2 = round_iv(&t_iv.square(), work);
    let mut power = t_iv.clone();
    let mut sum = RationalInterval::zero();
    let mut j: u64 = 0;
    let eps = BigRational::new(BigInt::one(), pow2(work));
    loop {
        let term = power.scale(&BigRational::new(BigInt::one(), BigInt::from(2 * j + 1)));
        sum = round_iv(&(&sum + &term), work);
        power = round_iv(&(&power * &t2), work);
        j += 1;
        // tail <= t^(2j+1) / ((2j+1)(1 - t^2)) <= (9/8) t^(2j+1)
        let tail = power.hi() * rat(9, 8) / int(2 * j as i64 + 1);
        if tail < eps {
            let tail_iv = RationalInterval::from_sorted(BigRational::zero(), tail);
            return (&sum + &tail_iv).scale(&int(2));
        }
    }
}

/// Enclosure of `ln 2` at roughly `bits` bits, computed from the series.
pub fn ln2(bits: u64) -> RationalInterval {
    two_atanh(&rat(1, 3), bits)
}

/// Enclosure of `ln x` for a positive rational.
pub fn ln_rational(x: &BigRational, bits: u64) -> Result<RationalInterval> {
    if !x.is_positive() {
        return Err(Error::Precondition("logarithm of a non-positive number".into()));
    }
    if x.is_one() {
        return Ok(RationalInterval::zero());
    }
    // x = 2^k r with r in [2/3, 4/3)
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut r = shift(x, -k);
    while r >= rat(4, 3) {
        r = r / int(2);
        k += 1;
    }
    while r < rat(2, 3) {
        r = r * int(2);
        k -= 1;
    }
    let t = (&r - BigRational::one()) / (&r + BigRational::one());
    let extra = 64 - (k.unsigned_abs().max(1)).leading_zeros() as u64;
    let tail = if t.is_negative() { -&two_atanh(&-&t, bits) } else { two_atanh(&t, bits) };
    let l2 = ln2(bits + extra);
    Ok(&l2.scale(&int(k)) + &tail)
}

/// Enclosure of `ln` over a positive interval.
pub fn ln(x: &RationalInterval, bits: u64) -> Result<RationalInterval> {
    let lo = ln_rational(x.lo(), bits)?;
    if x.is_point() {
        return Ok(lo);
    }
    let hi = ln_rational(x.hi(), bits)?;
    Ok(RationalInterval::from_sorted(lo.lo().clone(), hi.hi().clone()))
}

fn shift(x: &BigRational, k: i64) -> BigRational {
    match k.cmp(&0) {
        Ordering::Equal => x.clone(),
        Ordering::Greater => x * BigRational::from_integer(pow2(k as u64)),
        Ordering::Less => x / BigRational::from_integer(pow2((-k) as u64)),
    }
}

/// Enclosure of `e^x` for a rational `x`, with about `bits` bits of
/// relative accuracy.
pub fn exp_rational(x: &BigRational, bits: u64) -> RationalInterval {
    if x.is_zero() {
        return RationalInterval::point(BigRational::one());
    }
    // reduce to |y| <= 1/2 with y = x / 2^s
    let s = (x.numer().bits() as i64 - x.denom().bits() as i64 + 2).max(0) as u64;
    let y = shift(x, -(s as i64));
    // |x| / ln 2 bits are lost to the magnitude of small results
    let mag = x.abs().ceil().to_integer().to_u64().unwrap_or(u64::MAX / 4);
    let work = bits + s + mag * 3 / 2 + 32;
    let y_iv = RationalInterval::from_sorted(floor_dyadic(&y, work), ceil_dyadic(&y, work));
    let eps = BigRational::new(BigInt::one(), pow2(work));
    let mut sum = RationalInterval::point(BigRational::one());
    let mut term = RationalInterval::point(BigRational::one());
    let mut j: i64 = 1;
    loop {
        term = round_iv(&(&term * &y_iv).scale(&rat(1, j)), work);
        sum = round_iv(&(&sum + &term), work);
        j += 1;
        // tail <= 2 |term| / j for |y| <= 1/2
        let tail = term.max_abs() * int(2) / int(j);
        if tail < eps {
            sum = &sum + &RationalInterval::from_sorted(-&tail, tail);
            break;
        }
    }
    for _ in 0..s {
        sum = round_iv(&sum.square(), work);
    }
    sum
}

/// Enclosure of `e^x` over an interval; the lower end is strictly positive.
pub fn exp(x: &RationalInterval, bits: u64) -> RationalInterval {
    let mut b = bits;
    loop {
        let lo = exp_rational(x.lo(), b);
        let hi = if x.is_point() { lo.clone() } else { exp_rational(x.hi(), b) };
        if lo.lo().is_positive() {
            return RationalInterval::from_sorted(lo.lo().clone(), hi.hi().clone());
        }
        b *= 2;
    }
}

/// `(1/2) ln max(1, m)` where `m` encloses a squared modulus.
pub fn half_log_max_one(m: &RationalInterval, bits: u64) -> RationalInterval {
    let one = BigRational::one();
    let lo = if m.lo() <= &one {
        BigRational::zero()
    } else {
        ln_rational(m.lo(), bits).expect("positive").lo().clone()
    };
    let hi = if m.hi() <= &one {
        BigRational::zero()
    } else {
        ln_rational(m.hi(), bits).expect("positive").hi().clone()
    };
    RationalInterval::from_sorted(lo, hi).scale(&rat(1, 2))
}

/// Decimal rendering of an enclosure: a center value and an error bound
/// `e` such that `[value - e, value + e]` contains the interval and
/// `e >= width`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalEnclosure {
    pub value: String,
    pub error: String,
}

pub fn render_decimal(x: &RationalInterval) -> DecimalEnclosure {
    let width = x.width();
    // show digits down to about the width, clamped to [6, 40]
    let digits = match super::log2_estimate(&width) {
        None => 20,
        Some(e) => ((-e) as f64 * std::f64::consts::LOG10_2).ceil().clamp(6.0, 40.0) as u32,
    };
    let scale = BigInt::from(10).pow(digits);
    let mid = x.midpoint();
    let scaled = &mid * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let value = BigRational::new(rounded.clone(), scale);
    let dev = (&value - x.lo()).abs().max((x.hi() - &value).abs());
    let err = dev.max(width);
    DecimalEnclosure { value: format_fixed(&rounded, digits), error: format_error_up(&err) }
}

fn format_fixed(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (w, f) = padded.split_at(padded.len() - d);
    let f = f.trim_end_matches('0');
    let body = if f.is_empty() { w.to_string() } else { format!("{w}.{f}") };
    if neg { format!("-{body}") } else { body }
}

/// Two significant digits in scientific notation, rounded up.
fn format_error_up(e: &BigRational) -> String {
    if e.is_zero() {
        return "0".into();
    }
    // find k with 10 <= e * 10^k < 100
    let mut k: i64 = 1 - (e.numer().bits() as i64 - e.denom().bits() as i64) * 3 / 10;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scaled = |k: i64| -> BigRational {
        if k >= 0 {
            e * BigRational::from_integer(BigInt::from(10).pow(k as u32))
        } else {
            e / BigRational::from_integer(BigInt::from(10).pow((-k) as u32))
        }
    };
    loop {
        let v = scaled(k);
        if v < ten {
            k += 1;
        } else if v >= int(100) {
            k -= 1;
        } else {
            let (q, r) = v.numer().div_rem(v.denom());
            let q = if r.is_zero() { q } else { q + 1 };
            // q in [10, 100]
            let q = q.to_i64().unwrap();
            let (mant, exp) = if q == 100 { (10, -(k - 1)) } else { (q, -k) };
            return format!("{}.{}e{}", mant / 10, mant % 10, exp + 1);
        }
    }
}
