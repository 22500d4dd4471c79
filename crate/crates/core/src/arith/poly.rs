//! Dense univariate polynomials over Z and Q, constant term first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `degree() == len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Polynomial with rational coefficients; same normalization as
/// [`IntPolynomial`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd(0, 0)"));
        }
        Ok(self.to_rational().gcd(&other.to_rational()).to_primitive_int())
    }

    /// `p / gcd(p, p')`, made primitive.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree part"));
        }
        if self.degree() == Some(0) {
            return Ok(Self::one());
        }
        let g = self.gcd(&self.derivative())?;
        let (q, r) = self.to_rational().div_rem(&g.to_rational());
        debug_assert!(r.is_zero());
        Ok(q.to_primitive_int())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false),
        }
    }

    /// Resultant with the convention `Res(p, q) = lc(q)^deg(p) * prod p(b)`
    /// over the roots `b` of `q` (counted with multiplicity).
    ///
    /// For nonconstant inputs this equals `(-1)^(deg p * deg q)` times the
    /// Sylvester-matrix resultant `Res_std(p, q)`, i.e. `Res_std(q, p)`.
    pub fn resultant(&self, other: &Self) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial("resultant"));
        }
        let r = self.to_rational().resultant(&other.to_rational())?;
        if !r.is_integer() {
            return Err(Error::Soundness("integer resultant has a denominator".into()));
        }
        Ok(r.to_integer())
    }

    /// Quotient when `other` divides `self` exactly over Z.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.to_rational().div_rem(&other.to_rational());
        if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(Self::new(q.coeffs().iter().map(|c| c.to_integer()).collect()))
    }
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = &r[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading_coeff().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Resultant with the convention of [`IntPolynomial::resultant`].
    pub fn resultant(&self, other: &Self) -> Result<BigRational> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial("resultant"));
        }
        // R(p, q) = lc(q)^{deg p} prod_{q(b)=0} p(b)
        let mut p = self.clone();
        let mut q = other.clone();
        let mut acc = BigRational::one();
        loop {
            let dp = p.degree().unwrap();
            let dq = q.degree().unwrap();
            let lcq = q.leading_coeff().unwrap().clone();
            if dq == 0 {
                return Ok(acc * pow_rat(&lcq, dp));
            }
            if dp == 0 {
                return Ok(acc * pow_rat(&p.coeffs[0], dq));
            }
            let r = p.rem(&q);
            let Some(dr) = r.degree() else {
                return Ok(BigRational::zero());
            };
            // R(p, q) = lc(q)^{dp - dr} R(r, q) and R(r, q) = (-1)^{dq dr} R(q, r)
            acc *= pow_rat(&lcq, dp - dr);
            if (dq * dr) % 2 == 1 {
                acc = -acc;
            }
            p = q;
            q = r;
        }
    }

    /// Clear denominators, divide by the content, force a positive leading
    /// coefficient.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        IntPolynomial::new(ints).primitive_part()
    }

    /// Interpolating polynomial of degree `< xs.len()` through the points.
    pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Self {
        assert_eq!(xs.len(), ys.len());
        // Newton divided differences
        let n = xs.len();
        let mut dd: Vec<BigRational> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            let lin = Self::new(vec![-xs[i].clone(), BigRational::one()]);
            acc = &(&acc * &lin) + &Self::constant(dd[i].clone());
        }
        acc
    }
}

pub(crate) fn pow_rat(b: &BigRational, e: usize) -> BigRational {
    num_traits::pow(b.clone(), e)
}

macro_rules! ring_ops {
    ($ty:ident, $c:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                let mut v = Vec::with_capacity(n);
                for i in 0..n {
                    let a = self.coeffs.get(i);
                    let b = rhs.coeffs.get(i);
                    v.push(match (a, b) {
                        (Some(a), Some(b)) => a + b,
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                $ty::new(v)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(self.coeffs.iter().map(|c| -c).collect())
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                if self.is_zero() || rhs.is_zero() {
                    return $ty::zero();
                }
                let mut v = vec![<$c>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.coeffs.iter().enumerate() {
                        v[i + j] += a * b;
                    }
                }
                $ty::new(v)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.coeffs.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, c) in self.coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    first = false;
                    let unit = mag.is_one();
                    match (i, unit) {
                        (0, _) => write!(f, "{mag}")?,
                        (1, true) => write!(f, "x")?,
                        (1, false) => write!(f, "{mag}*x")?,
                        (_, true) => write!(f, "x^{i}")?,
                        (_, false) => write!(f, "{mag}*x^{i}")?,
                    }
                }
                Ok(())
            }
        }
    };
}

ring_ops!(IntPolynomial, BigInt);
ring_ops!(RatPolynomial, BigRational);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn basic_ring_identities() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[1, 2]) + &p(&[-1, -2]), IntPolynomial::zero());
        assert_eq!(p(&[1, 1, 1]).derivative(), p(&[1, 2]));
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(p(&[0, -3, 0, 1]).degree(), Some(3));
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn gcd_and_squarefree() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, -2, 1]).squarefree_part().unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 2]).gcd(&p(&[2, 2])).unwrap(), p(&[1, 1]));
        assert!(IntPolynomial::zero().gcd(&IntPolynomial::zero()).is_err());
        assert_eq!(p(&[4, 0, -2]).gcd(&IntPolynomial::zero()).unwrap(), p(&[-2, 0, 1]));
        assert!(p(&[-2, 0, 1]).is_squarefree());
        assert!(!p(&[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn resultant_convention() {
        // lc(q)^{deg p} prod p(roots of q)
        assert_eq!(p(&[-2, 0, 1]).resultant(&p(&[-1, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(p(&[-3, 1]).resultant(&p(&[-5, 1])).unwrap(), BigInt::from(2));
        assert_eq!(p(&[0, 1]).resultant(&p(&[0, 1])).unwrap(), BigInt::zero());
        // p(x) = x^2 + 1 at the roots of q = 2x - 1: lc(q)^2 * (1/4 + 1) = 5
        assert_eq!(p(&[1, 0, 1]).resultant(&p(&[-1, 2])).unwrap(), BigInt::from(5));
        // constants
        assert_eq!(p(&[3]).resultant(&p(&[1, 0, 1])).unwrap(), BigInt::from(9));
        assert!(IntPolynomial::zero().resultant(&p(&[1, 1])).is_err());
    }

    #[test]
    fn resultant_matches_root_product() {
        // q = (x-1)(x-2)(x+3), p = x^2 + x + 5: prod p(b) over b in {1, 2, -3}
        let q = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[3, 1]);
        let pp = p(&[5, 1, 1]);
        let expected = [1, 2, -3]
            .iter()
            .map(|&b| pp.eval(&int(b)))
            .fold(BigRational::one(), |a, v| a * v);
        assert_eq!(BigRational::from_integer(pp.resultant(&q).unwrap()), expected);
    }

    #[test]
    fn division_and_interpolation() {
        let a = p(&[1, 0, 0, 0, 0, 1]); // x^5 + 1
        let (q, r) = a.to_rational().div_rem(&p(&[1, 1]).to_rational());
        assert!(r.is_zero());
        assert_eq!(q.to_primitive_int(), p(&[1, -1, 1, -1, 1]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[1, 2])), None);

        let xs: Vec<_> = (0..4).map(int).collect();
        let f = RatPolynomial::new(vec![rat(1, 2), int(-3), int(0), rat(2, 3)]);
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(RatPolynomial::interpolate(&xs, &ys), f);
    }

    #[test]
    fn extended_gcd_identity() {
        let a = p(&[-2, 0, 1]).to_rational();
        let b = p(&[1, 3, 0, 1]).to_rational();
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, RatPolynomial::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
