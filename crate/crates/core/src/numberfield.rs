//! Exact arithmetic in `K = Q[x]/(f)` with a designated complex embedding.
//!
//! The defining polynomial is trusted to be irreducible; only squarefreeness
//! is checked. With a reducible `f` every result refers to the ring
//! `Q[x]/(f)` and division may fail on zero divisors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::linalg::Matrix;
use crate::arith::transcendental::{exp, ln};
use crate::arith::{
    bits_for_width, format_rational, pow2, ComplexRectangle, IntPolynomial, RatPolynomial, RationalInterval,
};
use crate::error::{Error, Result};
use crate::roots::RootSet;

struct FieldData {
    poly: IntPolynomial,
    /// `poly` made monic, stored low degree first without the leading 1.
    reduction: Vec<BigRational>,
    modulus: RatPolynomial,
    roots: RootSet,
    root_index: usize,
    embedding: ComplexRectangle,
}

/// A number field `Q[x]/(f)` together with the root of `f` picked out by an
/// isolating rectangle.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    /// Build the field and check that `embedding` (a closed, possibly
    /// degenerate rectangle) contains exactly one root of `poly`.
    pub fn new(poly: IntPolynomial, embedding: ComplexRectangle) -> Result<Self> {
        let deg = poly.degree().ok_or(Error::ZeroPolynomial("defining polynomial"))?;
        if deg == 0 {
            return Err(Error::InvalidInput("defining polynomial must have degree at least 1".into()));
        }
        if !poly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let roots = RootSet::new(&poly)?;
        let inside = roots.roots_in(&embedding)?;
        if inside.len() != 1 {
            return Err(Error::RootNotIsolated(format!(
                "rectangle contains {} roots of {poly}, expected exactly one",
                inside.len()
            )));
        }
        Ok(Self::assemble(poly, roots, inside[0], embedding))
    }

    /// The field `Q`, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        let poly = IntPolynomial::x();
        let roots = RootSet::new(&poly).expect("x has a root");
        Self::assemble(poly, roots, 0, ComplexRectangle::zero())
    }

    fn assemble(poly: IntPolynomial, roots: RootSet, root_index: usize, embedding: ComplexRectangle) -> Self {
        let modulus = poly.to_rational().monic();
        let d = poly.degree().unwrap();
        let reduction = modulus.coeffs()[..d].to_vec();
        NumberField(Arc::new(FieldData { poly, reduction, modulus, roots, root_index, embedding }))
    }

    pub fn degree(&self) -> usize {
        self.0.reduction.len()
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.0.poly
    }

    pub fn embedding(&self) -> &ComplexRectangle {
        &self.0.embedding
    }

    /// All complex roots of the defining polynomial; index
    /// [`root_index`](Self::root_index) is the designated one.
    pub fn roots(&self) -> &RootSet {
        &self.0.roots
    }

    pub fn root_index(&self) -> usize {
        self.0.root_index
    }

    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.poly == other.0.poly && self.0.root_index == other.0.root_index)
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::InvalidInput(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.degree()
            )));
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    /// Reduce an arbitrary polynomial in the generator.
    pub fn from_poly(&self, p: &RatPolynomial) -> FieldElement {
        let r = p.rem(&self.0.modulus);
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), BigRational::zero());
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = q;
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&RatPolynomial::x())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({}) @ {:?}", self.0.poly, self.0.embedding)
    }
}

/// An element of a [`NumberField`], stored as the coefficients of its
/// reduced representative in the generator (constant term first).
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    pub fn to_poly(&self) -> RatPolynomial {
        RatPolynomial::new(self.coords.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coords.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let red = &self.field.0.reduction;
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, f) in red.iter().enumerate() {
                if !f.is_zero() {
                    prod[k - d + i] -= &c * f;
                }
            }
        }
        prod.truncate(d);
        Ok(FieldElement { field: self.field.clone(), coords: prod })
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.field.0.modulus);
        if g.degree() != Some(0) {
            return Err(Error::Precondition(
                "element is a zero divisor: the defining polynomial is reducible".into(),
            ));
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    /// `self^k` for any integer `k`; negative powers need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `p(self)` for an integer polynomial.
    pub fn eval_poly(&self, p: &IntPolynomial) -> Self {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(BigRational::from_integer(c.clone()));
        }
        acc
    }

    /// Matrix of multiplication by `self` on the power basis: column `j`
    /// holds the coordinates of `self * x^j`.
    pub fn multiplication_matrix(&self) -> Matrix {
        let d = self.coords.len();
        let mut cols = Vec::with_capacity(d);
        let x = self.field.generator();
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = &cur * &x;
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// `det(y - M_self)` as a polynomial in `y`, via the resultant
    /// `Res_x(y - g(x), f(x))` with monic `f`, interpolated at `y = 0..d`.
    pub fn characteristic_poly(&self) -> RatPolynomial {
        let d = self.coords.len();
        let g = self.to_poly();
        let modulus = &self.field.0.modulus;
        if let Some(q) = self.as_rational() {
            // (y - q)^d
            let lin = RatPolynomial::new(vec![-q, BigRational::one()]);
            return (0..d).fold(RatPolynomial::one(), |acc, _| &acc * &lin);
        }
        let xs: Vec<BigRational> = (0..=d).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
        let ys: Vec<BigRational> = xs
            .iter()
            .map(|y0| {
                let p = &RatPolynomial::constant(y0.clone()) - &g;
                p.resultant(modulus).expect("nonconstant element")
            })
            .collect();
        RatPolynomial::interpolate(&xs, &ys)
    }

    /// Minimal polynomial over `Q` as a primitive integer polynomial with
    /// positive leading coefficient.
    pub fn minimal_poly(&self) -> IntPolynomial {
        if let Some(q) = self.as_rational() {
            return RatPolynomial::new(vec![-q, BigRational::one()]).to_primitive_int();
        }
        let cp = self.characteristic_poly();
        let sq = cp.div_rem(&cp.gcd(&cp.derivative())).0;
        sq.to_primitive_int()
    }

    /// Degree of the element over `Q`.
    pub fn degree(&self) -> usize {
        self.minimal_poly().degree().unwrap_or(0)
    }

    /// Enclosure of the image under conjugate embedding `j` (the embedding
    /// sending the generator to root `j` of the defining polynomial), with
    /// both sides shorter than `eps`.
    pub fn conjugate(&self, j: usize, eps: &BigRational) -> Result<ComplexRectangle> {
        if !eps.is_positive() {
            return Err(Error::Precondition("eps must be positive".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(ComplexRectangle::real(q));
        }
        let g = self.to_poly();
        let roots = self.field.roots();
        let bits = bits_for_width(eps) + 8;
        let mut w = eps.clone();
        loop {
            let r = roots.refine(j, &w)?;
            let v = ComplexRectangle::eval_rat(&g, &r, Some(bits));
            if &v.max_side() < eps {
                return Ok(v);
            }
            // shrink the input box in proportion to the observed blow-up
            let grow = if r.max_side().is_zero() {
                BigRational::from_integer(2.into())
            } else {
                (v.max_side() / r.max_side()).max(BigRational::one())
            };
            let next = eps / (grow * BigRational::from_integer(4.into()));
            w = if next < w { next } else { w / BigRational::from_integer(2.into()) };
        }
    }

    /// Enclosure of the image under the designated embedding.
    pub fn refine_embedding(&self, eps: &BigRational) -> Result<ComplexRectangle> {
        self.conjugate(self.field.root_index(), eps)
    }

    /// Enclosure of `ln |sigma_j(self)|` with width below about `eps`.
    pub fn log_modulus_at(&self, j: usize, eps: &BigRational) -> Result<RationalInterval> {
        if self.is_zero() {
            return Err(Error::ZeroElement("logarithm of zero"));
        }
        let mut w = eps.clone();
        loop {
            let m = self.conjugate(j, &w)?.modulus_squared();
            if m.lo().is_positive() {
                let l = ln(&m, bits_for_width(eps) + 8)?.scale(&crate::arith::rat(1, 2));
                if &l.width() < eps {
                    return Ok(l);
                }
                // ln is 1/m-Lipschitz near m
                w = (&w * m.lo() / BigRational::from_integer(4.into())).min(w.clone() / BigRational::from_integer(2.into()));
            } else {
                w = w / BigRational::from_integer(16.into());
            }
        }
    }

    /// `ln |self|` under the designated embedding.
    pub fn log_modulus(&self, eps: &BigRational) -> Result<RationalInterval> {
        self.log_modulus_at(self.field.root_index(), eps)
    }

    /// Exact comparison of `|self|` and `|other|` under the designated
    /// embedding.
    ///
    /// Enclosures of `|self/other|^2` are refined until they separate from
    /// 1. If instead the enclosure shrinks inside `((1-g)^2, (1+g)^2)`, where
    /// `g` is a certified lower bound for the modulus gap of the quotient,
    /// the moduli are equal.
    pub fn compare_modulus(&self, other: &Self) -> Result<Ordering> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroElement("modulus comparison"));
        }
        if self == other {
            return Ok(Ordering::Equal);
        }
        let theta = self.try_div(other)?;
        if let Some(q) = theta.as_rational() {
            return Ok(q.abs().cmp(&BigRational::one()));
        }
        let one = BigRational::one();
        let mut eps = BigRational::new(BigInt::one(), pow2(24));
        let mut window: Option<(BigRational, BigRational)> = None;
        loop {
            let m = theta.refine_embedding(&eps)?.modulus_squared();
            if m.hi() < &one {
                return Ok(Ordering::Less);
            }
            if m.lo() > &one {
                return Ok(Ordering::Greater);
            }
            if window.is_none() {
                let gap = crate::heights::modulus_gap(&theta)?;
                let g = exp(&RationalInterval::point(gap.enclosure().lo().clone()), 64).lo().clone();
                let lo = (&one - &g) * (&one - &g);
                let hi = (&one + &g) * (&one + &g);
                window = Some((lo, hi));
            }
            let (lo, hi) = window.as_ref().unwrap();
            if m.lo() > lo && m.hi() < hi {
                return Ok(Ordering::Equal);
            }
            eps = &eps * &eps;
        }
    }
}

macro_rules! field_ops {
    ($($tr:ident $m:ident $try:ident),*) => {$(
        /// Panics if the operands belong to different fields.
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("operands in the same field")
            }
        }
    )*};
}
field_ops!(Add add try_add, Sub sub try_sub, Mul mul try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// `Q[x]/(f)` for `f` with small integer coefficients, embedded at the root
/// inside `rect`.
pub fn field_from_i64(coeffs: &[i64], rect: ComplexRectangle) -> Result<NumberField> {
    NumberField::new(IntPolynomial::from_i64(coeffs), rect)
}
