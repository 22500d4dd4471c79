//! Absolute logarithmic heights of field elements and projective points.
//!
//! Element heights use the Mahler form
//! `h(a) = (ln|lc| + Σ ln max(1, |root|)) / k` over the minimal polynomial.
//! Projective heights sum over places: archimedean places through conjugate
//! enclosures, finite places through the content of the norm form
//! `N(x_0 a_0 + ... + x_n a_n)`, which by Gauss's lemma equals
//! `Π_p Π_{v | p} max_i |a_i|_v^{d_v}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::linalg::{determinant, Matrix};
use crate::arith::transcendental::{half_log_max_one, ln, ln2_constant, ln_rational, render_decimal, DecimalEnclosure};
use crate::arith::{bits_for_width, int, pow2, rat, RatPolynomial, RationalInterval};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::roots::RootSet;
use crate::unity::root_of_unity_test;

/// Rigorous enclosure of a real quantity on the natural-log scale.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightValue(RationalInterval);

impl HeightValue {
    pub fn new(enclosure: RationalInterval) -> Self {
        HeightValue(enclosure)
    }

    pub fn zero() -> Self {
        HeightValue(RationalInterval::zero())
    }

    pub fn enclosure(&self) -> &RationalInterval {
        &self.0
    }

    pub fn lo(&self) -> &BigRational {
        self.0.lo()
    }

    pub fn hi(&self) -> &BigRational {
        self.0.hi()
    }

    pub fn width(&self) -> BigRational {
        self.0.width()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.0.intersects(&other.0)
    }

    pub fn render(&self) -> DecimalEnclosure {
        render_decimal(&self.0)
    }
}

/// A nonempty finite set of nonzero elements of one field.
#[derive(Clone, Debug)]
pub struct OmegaSet {
    field: NumberField,
    elements: Vec<FieldElement>,
}

impl OmegaSet {
    pub fn new(field: &NumberField, elements: Vec<FieldElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidInput("the set of elements is empty".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if !e.field().same(field) {
                return Err(Error::MixedFields);
            }
            if e.is_zero() {
                return Err(Error::InvalidInput(format!("element {i} is zero")));
            }
        }
        Ok(OmegaSet { field: field.clone(), elements })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_eps(eps: &BigRational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::Precondition("eps must be positive".into()))
    }
}

/// `ln max(|p|, q)` for `x = p/q`, the height of a rational.
fn rational_height(x: &BigRational, bits: u64) -> RationalInterval {
    let m = x.numer().abs().max(x.denom().clone());
    ln_rational(&BigRational::from_integer(m), bits).expect("positive")
}

/// `h(a)`. Roots of unity (and zero, by convention) get the exact value 0.
pub fn height_of_element(a: &FieldElement, eps: &BigRational) -> Result<HeightValue> {
    check_eps(eps)?;
    if a.is_zero() {
        return Ok(HeightValue::zero());
    }
    let bits = bits_for_width(eps) + 8;
    if let Some(q) = a.as_rational() {
        return Ok(HeightValue(rational_height(&q, bits)));
    }
    if root_of_unity_test(a)?.is_root_of_unity() {
        return Ok(HeightValue::zero());
    }
    let p = a.minimal_poly();
    let k = p.degree().expect("nonzero minimal polynomial");
    let roots = RootSet::new(&p)?;
    let lc = BigRational::from_integer(p.leading_coeff().unwrap().clone());
    let lead = ln_rational(&lc, bits)?;
    let mut w = eps.clone();
    loop {
        let mut sum = lead.clone();
        for i in 0..roots.len() {
            let r = roots.refine(i, &w)?;
            sum = &sum + &half_log_max_one(&r.modulus_squared(), bits);
        }
        let h = sum.scale(&rat(1, k as i64));
        if &h.width() < eps {
            return Ok(HeightValue(h));
        }
        w = w / int(8);
    }
}

/// `h(a_0 : ... : a_n)` with all coordinates in one field.
pub fn height_of_projective_point(coords: &[FieldElement], eps: &BigRational) -> Result<HeightValue> {
    check_eps(eps)?;
    let first = coords.first().ok_or_else(|| Error::InvalidInput("empty projective point".into()))?;
    let field = first.field().clone();
    if coords.iter().any(|c| !c.field().same(&field)) {
        return Err(Error::MixedFields);
    }
    if coords.iter().all(FieldElement::is_zero) {
        return Err(Error::InvalidInput("all coordinates are zero".into()));
    }
    let bits = bits_for_width(eps) + 8;
    if let Some(qs) = coords.iter().map(FieldElement::as_rational).collect::<Option<Vec<_>>>() {
        return Ok(HeightValue(rational_point_height(&qs, bits)));
    }
    let d = field.degree();
    let content = norm_form_content(coords);
    let finite = -&ln_rational(&content, bits)?;
    let mut w = eps.clone();
    loop {
        if let Some(arch) = archimedean_sum(coords, d, &w, bits)? {
            let h = (&arch + &finite).scale(&rat(1, d as i64));
            if &h.width() < eps {
                return Ok(HeightValue(h));
            }
        }
        w = w / int(8);
    }
}

/// `Σ_j ln max_i |σ_j(a_i)|`, or `None` if the enclosures at width `w` do
/// not yet bound every maximum away from zero.
fn archimedean_sum(
    coords: &[FieldElement],
    d: usize,
    w: &BigRational,
    bits: u64,
) -> Result<Option<RationalInterval>> {
    let mut arch = RationalInterval::zero();
    for j in 0..d {
        let mut best: Option<RationalInterval> = None;
        for c in coords.iter().filter(|c| !c.is_zero()) {
            let m = c.conjugate(j, w)?.modulus_squared();
            best = Some(match best {
                None => m,
                Some(b) => b.max(&m),
            });
        }
        let best = best.expect("a nonzero coordinate");
        if !best.lo().is_positive() {
            return Ok(None);
        }
        arch = &arch + &ln(&best, bits)?.scale(&rat(1, 2));
    }
    Ok(Some(arch))
}

fn rational_point_height(qs: &[BigRational], bits: u64) -> RationalInterval {
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let m = ints.iter().map(|v| v.abs()).max().unwrap() / g;
    ln_rational(&BigRational::from_integer(m), bits).expect("positive")
}

/// Content of `F(x_0..x_n) = det(Σ x_i M_{a_i})`, found by interpolating
/// `F(1, x_1..x_n)` on the grid `{0..d}^n`.
fn norm_form_content(coords: &[FieldElement]) -> BigRational {
    let d = coords[0].field().degree();
    let n = coords.len() - 1;
    let mats: Vec<Matrix> = coords.iter().map(FieldElement::multiplication_matrix).collect();
    let side = d + 1;
    let total = side.pow(n as u32);
    let mut values: Vec<BigRational> = (0..total)
        .map(|flat| {
            let mut idx = flat;
            let mut m = mats[0].clone();
            for mat in &mats[1..] {
                let t = int((idx % side) as i64);
                idx /= side;
                for (row, mrow) in m.iter_mut().zip(mat) {
                    for (v, e) in row.iter_mut().zip(mrow) {
                        *v += &t * e;
                    }
                }
            }
            determinant(&m)
        })
        .collect();
    // turn grid values into monomial coefficients, one axis at a time
    let xs: Vec<BigRational> = (0..side).map(|i| int(i as i64)).collect();
    let mut stride = 1;
    for _ in 0..n {
        for start in 0..total {
            if (start / stride) % side != 0 {
                continue;
            }
            let ys: Vec<BigRational> = (0..side).map(|i| values[start + i * stride].clone()).collect();
            let poly = RatPolynomial::interpolate(&xs, &ys);
            for i in 0..side {
                values[start + i * stride] = poly.coeff(i);
            }
        }
        stride *= side;
    }
    let (num, den) = values.iter().filter(|v| !v.is_zero()).fold(
        (BigInt::zero(), BigInt::one()),
        |(g, l), v| (g.gcd(v.numer()), l.lcm(v.denom())),
    );
    BigRational::new(num, den)
}

/// `(h(Ω), h̃(Ω))` where `h̃` is the largest height of a quotient of two
/// elements (0 when `|Ω| = 1`).
pub fn omega_heights(omega: &OmegaSet, eps: &BigRational) -> Result<(HeightValue, HeightValue)> {
    let els = omega.elements();
    let mut h = RationalInterval::zero();
    for a in els {
        h = h.max(height_of_element(a, eps)?.enclosure());
    }
    let mut ht = RationalInterval::zero();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let q = els[i].try_div(&els[j])?;
            ht = ht.max(height_of_element(&q, eps)?.enclosure());
        }
    }
    if ht.lo() > &(h.hi() * int(2) + eps * int(4)) {
        return Err(Error::Soundness("quotient height exceeds twice the set height".into()));
    }
    Ok((HeightValue(h), HeightValue(ht)))
}

/// Instance check of `e^{-k h(a)} <= |a| <= e^{k h(a)}` with `k` the degree
/// of `a`. Returns false only if the certified enclosures refute it.
pub fn liouville_check(a: &FieldElement) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroElement("Liouville inequality"));
    }
    let eps = BigRational::new(BigInt::one(), pow2(40));
    let k = int(a.degree() as i64);
    let h = height_of_element(a, &eps)?;
    let l = a.log_modulus(&eps)?;
    let refuted = l.hi() < &-(&k * h.hi()) || l.lo() > &(&k * h.hi());
    Ok(!refuted)
}

/// Enclosure of `-d^2 (h(θ) + ln 2)` with `d` the ambient field degree:
/// whenever `|θ| != 1`, `|1 - |θ|| >= e^g` for every `g` in the enclosure.
pub fn modulus_gap(theta: &FieldElement) -> Result<HeightValue> {
    if theta.is_zero() {
        return Err(Error::ZeroElement("modulus gap"));
    }
    let d = theta.field().degree() as i64;
    let h = height_of_element(theta, &BigRational::new(BigInt::one(), pow2(30)))?;
    let s = &h.0 + ln2_constant();
    Ok(HeightValue(s.scale(&int(-d * d))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ComplexRectangle;
    use crate::numberfield::field_from_i64;

    fn eps() -> BigRational {
        BigRational::new(BigInt::one(), pow2(40))
    }

    fn sqrt2() -> NumberField {
        field_from_i64(
            &[-2, 0, 1],
            ComplexRectangle::new(RationalInterval::new(int(1), int(2)).unwrap(), RationalInterval::zero()),
        )
        .unwrap()
    }

    fn close(h: &HeightValue, v: f64) -> bool {
        let m = crate::arith::rational_to_f64(&h.enclosure().midpoint());
        (m - v).abs() < 1e-9
    }

    #[test]
    fn element_heights() {
        let q = NumberField::rationals();
        assert!(close(&height_of_element(&q.from_int(2), &eps()).unwrap(), 2f64.ln()));
        let k = sqrt2();
        assert!(close(&height_of_element(&k.generator(), &eps()).unwrap(), 0.5 * 2f64.ln()));
        let w = field_from_i64(
            &[1, 1, 1],
            ComplexRectangle::new(
                RationalInterval::new(int(-1), int(0)).unwrap(),
                RationalInterval::new(int(0), int(1)).unwrap(),
            ),
        )
        .unwrap();
        assert_eq!(height_of_element(&w.generator(), &eps()).unwrap(), HeightValue::zero());
    }

    #[test]
    fn projective_heights() {
        let q = NumberField::rationals();
        let p: Vec<_> = [1, 2, 3].iter().map(|&v| q.from_int(v)).collect();
        assert!(close(&height_of_projective_point(&p, &eps()).unwrap(), 3f64.ln()));
        let k = sqrt2();
        let p = vec![k.one(), k.one(), k.generator()];
        assert!(close(&height_of_projective_point(&p, &eps()).unwrap(), 0.5 * 2f64.ln()));
        assert!(height_of_projective_point(&[k.zero(), k.zero()], &eps()).is_err());
    }

    #[test]
    fn norm_form_content_sees_denominators() {
        // (1 : x/3) in Q(sqrt 2): F = x0^2 - (2/9) x1^2, content 1/9
        let k = sqrt2();
        let a = k.element(vec![int(0), rat(1, 3)]).unwrap();
        assert_eq!(norm_form_content(&[k.one(), a.clone()]), rat(1, 9));
        let hp = height_of_projective_point(&[k.one(), a.clone()], &eps()).unwrap();
        let he = height_of_element(&a, &eps()).unwrap();
        assert!(hp.overlaps(&he));
        // minimal polynomial 9y^2 - 2: h = (ln 9 + 0) / 2
        assert!(close(&he, 0.5 * 9f64.ln()));
    }

    #[test]
    fn gap_and_liouville() {
        let q = NumberField::rationals();
        let g = modulus_gap(&q.from_int(2)).unwrap();
        assert!(close(&g, -2.0 * 2f64.ln()));
        let k = sqrt2();
        let g = modulus_gap(&k.generator()).unwrap();
        assert!(close(&g, -4.0 * 1.5 * 2f64.ln()));
        assert!(liouville_check(&k.generator()).unwrap());
        assert!(liouville_check(&q.from_int(1)).unwrap());
        assert!(liouville_check(&q.from_int(2)).unwrap());
    }
}
