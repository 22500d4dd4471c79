//! Axis-aligned complex rectangles `re + i*im` with rational interval sides.
//!
//! Every operation returns a rectangle containing all pointwise results.
//! Degenerate rectangles double as exact complex rationals: all operations
//! on points are exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::interval::RationalInterval;
use super::poly::{IntPolynomial, RatPolynomial};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexRectangle {
    re: RationalInterval,
    im: RationalInterval,
}

impl ComplexRectangle {
    pub fn new(re: RationalInterval, im: RationalInterval) -> Self {
        ComplexRectangle { re, im }
    }

    pub fn point(re: BigRational, im: BigRational) -> Self {
        ComplexRectangle { re: RationalInterval::point(re), im: RationalInterval::point(im) }
    }

    pub fn real(x: BigRational) -> Self {
        Self::point(x, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::from_integer(BigInt::from(1)))
    }

    pub fn re(&self) -> &RationalInterval {
        &self.re
    }

    pub fn im(&self) -> &RationalInterval {
        &self.im
    }

    pub fn width(&self) -> BigRational {
        self.re.width()
    }

    pub fn height(&self) -> BigRational {
        self.im.width()
    }

    pub fn max_side(&self) -> BigRational {
        self.width().max(self.height())
    }

    pub fn is_point(&self) -> bool {
        self.re.is_point() && self.im.is_point()
    }

    pub fn midpoint(&self) -> (BigRational, BigRational) {
        (self.re.midpoint(), self.im.midpoint())
    }

    pub fn conj(&self) -> Self {
        ComplexRectangle { re: self.re.clone(), im: -&self.im }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// `other` lies in the open interior of `self` (both sides strictly).
    pub fn strictly_contains(&self, other: &Self) -> bool {
        self.re.strictly_contains(&other.re) && self.im.strictly_contains(&other.im)
    }

    pub fn subset_of(&self, other: &Self) -> bool {
        self.re.subset_of(&other.re) && self.im.subset_of(&other.im)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        Some(ComplexRectangle {
            re: self.re.intersection(&other.re)?,
            im: self.im.intersection(&other.im)?,
        })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        ComplexRectangle { re: self.re.scale(s), im: self.im.scale(s) }
    }

    /// Enclosure of `|z|^2`.
    pub fn modulus_squared(&self) -> RationalInterval {
        &self.re.square() + &self.im.square()
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let m = other.modulus_squared();
        if m.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &other.conj();
        let inv = m.recip()?;
        Ok(ComplexRectangle { re: &num.re * &inv, im: &num.im * &inv })
    }

    pub fn round_outward(&self, bits: u64) -> Self {
        ComplexRectangle { re: self.re.round_outward(bits), im: self.im.round_outward(bits) }
    }

    /// Horner evaluation of an integer polynomial; intermediate results are
    /// widened onto the `2^-bits` grid when `bits` is given.
    pub fn eval_int(p: &IntPolynomial, z: &Self, bits: Option<u64>) -> Self {
        let mut acc = Self::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * z) + &Self::real(BigRational::from_integer(c.clone()));
            if let Some(b) = bits {
                acc = acc.round_outward(b);
            }
        }
        acc
    }

    pub fn eval_rat(p: &RatPolynomial, z: &Self, bits: Option<u64>) -> Self {
        let mut acc = Self::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * z) + &Self::real(c.clone());
            if let Some(b) = bits {
                acc = acc.round_outward(b);
            }
        }
        acc
    }
}

impl fmt::Debug for ComplexRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}i", self.re, self.im)
    }
}

impl Add for &ComplexRectangle {
    type Output = ComplexRectangle;
    fn add(self, rhs: &ComplexRectangle) -> ComplexRectangle {
        ComplexRectangle { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &ComplexRectangle {
    type Output = ComplexRectangle;
    fn sub(self, rhs: &ComplexRectangle) -> ComplexRectangle {
        ComplexRectangle { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &ComplexRectangle {
    type Output = ComplexRectangle;
    fn neg(self) -> ComplexRectangle {
        ComplexRectangle { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &ComplexRectangle {
    type Output = ComplexRectangle;
    fn mul(self, rhs: &ComplexRectangle) -> ComplexRectangle {
        ComplexRectangle {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn r(a: (i64, i64), b: (i64, i64)) -> ComplexRectangle {
        ComplexRectangle::new(
            RationalInterval::new(int(a.0), int(a.1)).unwrap(),
            RationalInterval::new(int(b.0), int(b.1)).unwrap(),
        )
    }

    #[test]
    fn spec_examples() {
        assert_eq!(&r((1, 1), (0, 0)) + &r((2, 2), (0, 0)), r((3, 3), (0, 0)));
        // corner enumeration of [0,1]+[0,1]i times i gives [-1,0]+[0,1]i
        assert_eq!(&r((0, 1), (0, 1)) * &r((0, 0), (1, 1)), r((-1, 0), (0, 1)));
        let q = r((1, 1), (0, 0)).checked_div(&r((2, 2), (0, 0))).unwrap();
        assert_eq!(q, ComplexRectangle::real(rat(1, 2)));
        assert!(r((1, 1), (0, 0)).checked_div(&r((-1, 1), (-1, 1))).is_err());
    }

    #[test]
    fn point_arithmetic_is_exact() {
        // (1+2i)(3-i) = 5 + 5i
        let a = ComplexRectangle::point(int(1), int(2));
        let b = ComplexRectangle::point(int(3), int(-1));
        assert_eq!(&a * &b, ComplexRectangle::point(int(5), int(5)));
        // (5+5i)/(3-i) = 1+2i
        assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }
}
