//! Certified isolation and refinement of all complex roots of a squarefree
//! integer polynomial.
//!
//! Approximations come from the Aberth iteration (first in `f64`, then in
//! dyadic arithmetic at increasing precision). Nothing is trusted until an
//! interval Newton (Krawczyk) test proves that each box holds exactly one
//! root, the boxes are pairwise disjoint, and their count equals the degree.
//! Real roots live in real intervals; non-real roots live in rectangles
//! strictly inside one half-plane.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    f64_to_rational, log2_estimate, rational_to_f64, round_dyadic, ComplexRectangle, IntPolynomial,
    RatPolynomial, RationalInterval,
};
use crate::error::{Error, Result};

/// Current enclosure of a single root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enclosure {
    /// Contains exactly one root, which is real. May be a single point.
    Real(RationalInterval),
    /// Contains exactly one root; does not meet the real axis.
    Complex(ComplexRectangle),
}

impl Enclosure {
    pub fn rect(&self) -> ComplexRectangle {
        match self {
            Enclosure::Real(x) => ComplexRectangle::new(x.clone(), RationalInterval::zero()),
            Enclosure::Complex(r) => r.clone(),
        }
    }

    /// Largest side length.
    pub fn size(&self) -> BigRational {
        match self {
            Enclosure::Real(x) => x.width(),
            Enclosure::Complex(r) => r.max_side(),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Enclosure::Real(_))
    }
}

/// All roots of a squarefree polynomial, each behind its own lock so that
/// refinement is memoized and safe under concurrent readers.
pub struct RootSet {
    poly: IntPolynomial,
    deriv: IntPolynomial,
    roots: Vec<Mutex<Enclosure>>,
}

impl std::fmt::Debug for RootSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RootSet").field("poly", &self.poly).finish()
    }
}

impl RootSet {
    pub fn new(poly: &IntPolynomial) -> Result<Self> {
        let deg = poly.degree().ok_or(Error::ZeroPolynomial("root isolation"))?;
        if deg == 0 {
            return Err(Error::Precondition("constant polynomial has no roots".into()));
        }
        if !poly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let deriv = poly.derivative();
        let encl = isolate(poly, &deriv)?;
        Ok(RootSet { poly: poly.clone(), deriv, roots: encl.into_iter().map(Mutex::new).collect() })
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn enclosure(&self, i: usize) -> Enclosure {
        self.roots[i].lock().expect("root lock").clone()
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.enclosure(i).is_real()
    }

    /// Refine root `i` until every side is shorter than `eps`.
    pub fn refine(&self, i: usize, eps: &BigRational) -> Result<ComplexRectangle> {
        if !eps.is_positive() {
            return Err(Error::Precondition("refinement width must be positive".into()));
        }
        let mut guard = self.roots[i].lock().expect("root lock");
        let mut extra = 0u64;
        let mut rounds = 0usize;
        while &guard.size() >= eps {
            let before = guard.size();
            let next = match &*guard {
                Enclosure::Real(x) => Enclosure::Real(self.step_real(x, extra)?),
                Enclosure::Complex(r) => Enclosure::Complex(self.step_complex(r, extra)?),
            };
            *guard = next;
            if guard.size() * BigRational::from_integer(2.into()) > before {
                extra += 32;
            }
            rounds += 1;
            if rounds > 20_000 {
                return Err(Error::RootNotIsolated("refinement did not converge".into()));
            }
        }
        Ok(guard.rect())
    }

    fn step_real(&self, x: &RationalInterval, extra: u64) -> Result<RationalInterval> {
        let bits = working_bits(&x.width(), extra);
        let c = dyadic_inside(x, bits);
        let pc = self.poly.eval(&c);
        if pc.is_zero() {
            return Ok(RationalInterval::point(c));
        }
        let mut next = x.clone();
        let dc = self.deriv.eval(&c);
        if !dc.is_zero() {
            let y = round_dyadic(&dc.recip(), bits);
            let dx = eval_interval(&self.deriv, x, bits);
            let one = RationalInterval::point(BigRational::one());
            let shifted = x - &RationalInterval::point(c.clone());
            let k = &RationalInterval::point(&c - &y * &pc)
                + &(&(&one - &dx.scale(&y)) * &shifted).round_outward(bits);
            next = k.intersection(x).ok_or_else(|| soundness("real Krawczyk image left the box"))?;
        }
        if next.width() * BigRational::from_integer(2.into()) > x.width() {
            // sign bisection: the root is simple, so p changes sign across it
            let pa = self.poly.eval(x.lo());
            if pa.is_zero() {
                return Ok(RationalInterval::point(x.lo().clone()));
            }
            let half = if pa.is_positive() != pc.is_positive() {
                RationalInterval::from_sorted(x.lo().clone(), c)
            } else {
                RationalInterval::from_sorted(c, x.hi().clone())
            };
            next = half.intersection(&next).unwrap_or(half);
        }
        Ok(next)
    }

    fn step_complex(&self, r: &ComplexRectangle, extra: u64) -> Result<ComplexRectangle> {
        let bits = working_bits(&r.max_side(), extra);
        let (cr, ci) = r.midpoint();
        let (rr, ri) = (round_dyadic(&cr, bits), round_dyadic(&ci, bits));
        let c = if r.contains_point(&rr, &ri) {
            ComplexRectangle::point(rr, ri)
        } else {
            ComplexRectangle::point(cr, ci)
        };
        let mut next = match krawczyk(&self.poly, &self.deriv, r, &c, bits) {
            Some(k) => k.intersection(r).ok_or_else(|| soundness("Krawczyk image left the box"))?,
            None => r.clone(),
        };
        if next.max_side() * BigRational::from_integer(2.into()) > r.max_side() {
            // exclusion on quadrants
            let mut kept: Option<ComplexRectangle> = None;
            for q in quadrants(&next) {
                let v = ComplexRectangle::eval_int(&self.poly, &q, Some(bits));
                if v.contains_zero() {
                    kept = Some(match kept {
                        None => q,
                        Some(h) => ComplexRectangle::new(h.re().hull(q.re()), h.im().hull(q.im())),
                    });
                }
            }
            if let Some(h) = kept {
                next = h;
            }
        }
        Ok(next)
    }

    /// Indices of the roots lying in the closed rectangle `r`, which may be
    /// degenerate (a segment or a point).
    pub fn roots_in(&self, r: &ComplexRectangle) -> Result<Vec<usize>> {
        let mut inside = Vec::new();
        for i in 0..self.len() {
            if self.root_in(i, r)? {
                inside.push(i);
            }
        }
        Ok(inside)
    }

    fn root_in(&self, i: usize, r: &ComplexRectangle) -> Result<bool> {
        let mut checked_boundary = false;
        loop {
            let e = self.enclosure(i).rect();
            if e.subset_of(r) {
                return Ok(true);
            }
            if !e.intersects(r) {
                return Ok(false);
            }
            if !checked_boundary {
                // the box holds exactly one root; a root of p on the part of
                // the boundary inside the box is that root
                if boundary_pieces(r)
                    .into_iter()
                    .any(|piece| self.has_root_on(&piece, &e))
                {
                    return Ok(true);
                }
                checked_boundary = true;
            }
            let size = self.enclosure(i).size();
            if size.is_zero() {
                return Ok(false);
            }
            self.refine(i, &(size / BigRational::from_integer(4.into())))?;
        }
    }

    /// Whether `p` has a root on `piece ∩ window`, decided exactly.
    fn has_root_on(&self, piece: &ComplexRectangle, window: &ComplexRectangle) -> bool {
        let Some(seg) = piece.intersection(window) else {
            return false;
        };
        let p = self.poly.to_rational();
        if seg.is_point() {
            let (x, y) = seg.midpoint();
            let v = ComplexRectangle::eval_int(&self.poly, &ComplexRectangle::point(x, y), None);
            return v.is_point() && v.contains_zero();
        }
        let (re_part, im_part, lo, hi) = if seg.im().is_point() {
            let (a, b) = restrict_horizontal(&p, seg.im().lo());
            (a, b, seg.re().lo().clone(), seg.re().hi().clone())
        } else {
            let (a, b) = restrict_vertical(&p, seg.re().lo());
            (a, b, seg.im().lo().clone(), seg.im().hi().clone())
        };
        let g = if im_part.is_zero() { re_part } else { re_part.gcd(&im_part) };
        count_real_roots(&g, &lo, &hi) > 0
    }
}

fn soundness(msg: &str) -> Error {
    Error::Soundness(msg.to_string())
}

/// Edges of a closed rectangle; a degenerate rectangle is its own boundary.
fn boundary_pieces(r: &ComplexRectangle) -> Vec<ComplexRectangle> {
    if r.re().is_point() || r.im().is_point() {
        return vec![r.clone()];
    }
    let (x0, x1) = (r.re().lo().clone(), r.re().hi().clone());
    let (y0, y1) = (r.im().lo().clone(), r.im().hi().clone());
    let pt = |v: &BigRational| RationalInterval::point(v.clone());
    vec![
        ComplexRectangle::new(r.re().clone(), pt(&y0)),
        ComplexRectangle::new(r.re().clone(), pt(&y1)),
        ComplexRectangle::new(pt(&x0), r.im().clone()),
        ComplexRectangle::new(pt(&x1), r.im().clone()),
    ]
}

/// `p(t + i y)` split into real and imaginary parts, as polynomials in `t`.
fn restrict_horizontal(p: &RatPolynomial, y: &BigRational) -> (RatPolynomial, RatPolynomial) {
    let t = RatPolynomial::x();
    let (mut re, mut im) = (RatPolynomial::zero(), RatPolynomial::zero());
    for c in p.coeffs().iter().rev() {
        let nre = &(&re * &t) - &im.scale(y);
        let nim = &(&im * &t) + &re.scale(y);
        re = &nre + &RatPolynomial::constant(c.clone());
        im = nim;
    }
    (re, im)
}

/// `p(x + i t)` split into real and imaginary parts, as polynomials in `t`.
fn restrict_vertical(p: &RatPolynomial, x: &BigRational) -> (RatPolynomial, RatPolynomial) {
    let t = RatPolynomial::x();
    let (mut re, mut im) = (RatPolynomial::zero(), RatPolynomial::zero());
    for c in p.coeffs().iter().rev() {
        let nre = &re.scale(x) - &(&im * &t);
        let nim = &im.scale(x) + &(&re * &t);
        re = &nre + &RatPolynomial::constant(c.clone());
        im = nim;
    }
    (re, im)
}

fn sign_changes(values: impl Iterator<Item = BigRational>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

fn sturm_chain(p: &RatPolynomial) -> Vec<RatPolynomial> {
    let normalize = |q: RatPolynomial| match q.leading_coeff() {
        Some(l) => q.scale(&l.abs().recip()),
        None => q,
    };
    let mut chain = vec![normalize(p.clone()), normalize(p.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        chain.push(normalize(-&r));
    }
}

/// Number of distinct real roots of `p` in the closed interval `[a, b]`.
pub fn count_real_roots(p: &RatPolynomial, a: &BigRational, b: &BigRational) -> usize {
    if p.is_zero() || a > b {
        return 0;
    }
    let mut g = p.div_rem(&p.gcd(&p.derivative())).0;
    let mut found = 0;
    for end in [a, b] {
        if g.degree().unwrap_or(0) > 0 && g.eval(end).is_zero() {
            found += 1;
            let lin = RatPolynomial::new(vec![-end.clone(), BigRational::one()]);
            g = g.div_rem(&lin).0;
        }
        if a == b {
            return found;
        }
    }
    if g.degree().unwrap_or(0) == 0 {
        return found;
    }
    let chain = sturm_chain(&g);
    let va = sign_changes(chain.iter().map(|q| q.eval(a)));
    let vb = sign_changes(chain.iter().map(|q| q.eval(b)));
    found + va - vb
}

fn working_bits(width: &BigRational, extra: u64) -> u64 {
    let e = log2_estimate(width).map(|e| (-e).max(0) as u64).unwrap_or(0);
    2 * e + 64 + extra
}

fn dyadic_inside(x: &RationalInterval, bits: u64) -> BigRational {
    let m = round_dyadic(&x.midpoint(), bits);
    if x.contains(&m) {
        m
    } else {
        x.midpoint()
    }
}

fn eval_interval(p: &IntPolynomial, x: &RationalInterval, bits: u64) -> RationalInterval {
    let mut acc = RationalInterval::zero();
    for c in p.coeffs().iter().rev() {
        acc = (&(&acc * x) + &RationalInterval::point(BigRational::from_integer(c.clone())))
            .round_outward(bits);
    }
    acc
}

fn quadrants(r: &ComplexRectangle) -> Vec<ComplexRectangle> {
    let (mx, my) = r.midpoint();
    let xs = [
        RationalInterval::from_sorted(r.re().lo().clone(), mx.clone()),
        RationalInterval::from_sorted(mx, r.re().hi().clone()),
    ];
    let ys = [
        RationalInterval::from_sorted(r.im().lo().clone(), my.clone()),
        RationalInterval::from_sorted(my, r.im().hi().clone()),
    ];
    let mut out = Vec::with_capacity(4);
    for x in &xs {
        for y in &ys {
            out.push(ComplexRectangle::new(x.clone(), y.clone()));
        }
    }
    out
}

/// Krawczyk image `c - y p(c) + (1 - y p'(X)) (X - c)` for a point `c` in
/// `X`, or `None` when `p'(c) = 0`.
fn krawczyk(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    x: &ComplexRectangle,
    c: &ComplexRectangle,
    bits: u64,
) -> Option<ComplexRectangle> {
    let pc = ComplexRectangle::eval_int(p, c, None);
    let dc = ComplexRectangle::eval_int(dp, c, None);
    if dc.contains_zero() {
        return None;
    }
    let inv = ComplexRectangle::one().checked_div(&dc).ok()?;
    let (yr, yi) = inv.midpoint();
    let y = ComplexRectangle::point(round_dyadic(&yr, bits), round_dyadic(&yi, bits));
    let dx = ComplexRectangle::eval_int(dp, x, Some(bits));
    let factor = &ComplexRectangle::one() - &(&y * &dx);
    let head = c - &(&y * &pc);
    Some((&head + &(&factor * &(x - c))).round_outward(bits))
}

// ---------------------------------------------------------------------------
// approximation

#[derive(Clone, Debug)]
struct Approx {
    re: BigRational,
    im: BigRational,
}

fn aberth_f64(p: &IntPolynomial) -> Option<Vec<Complex64>> {
    let coeffs: Vec<f64> =
        p.coeffs().iter().map(|c| rational_to_f64(&BigRational::from_integer(c.clone()))).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    // Fujiwara-style radius
    let radius = (0..n)
        .map(|i| (coeffs[i] / lead).abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    Some(z)
}

fn c_mul(a: &Approx, b: &Approx) -> Approx {
    Approx { re: &a.re * &b.re - &a.im * &b.im, im: &a.re * &b.im + &a.im * &b.re }
}

fn c_sub(a: &Approx, b: &Approx) -> Approx {
    Approx { re: &a.re - &b.re, im: &a.im - &b.im }
}

fn c_div(a: &Approx, b: &Approx) -> Option<Approx> {
    let n = &b.re * &b.re + &b.im * &b.im;
    if n.is_zero() {
        return None;
    }
    let num = c_mul(a, &Approx { re: b.re.clone(), im: -&b.im });
    Some(Approx { re: num.re / &n, im: num.im / n })
}

fn c_round(a: &Approx, bits: u64) -> Approx {
    Approx { re: round_dyadic(&a.re, bits), im: round_dyadic(&a.im, bits) }
}

fn c_norm_f64(a: &Approx) -> f64 {
    rational_to_f64(&a.re).hypot(rational_to_f64(&a.im))
}

fn aberth_dyadic(p: &IntPolynomial, start: &[Approx], bits: u64) -> Vec<Approx> {
    let n = start.len();
    let mut z: Vec<Approx> = start.iter().map(|a| c_round(a, bits)).collect();
    let one = Approx { re: BigRational::one(), im: BigRational::zero() };
    let eval = |x: &Approx| {
        let zero = Approx { re: BigRational::zero(), im: BigRational::zero() };
        let (mut v, mut d) = (zero.clone(), zero);
        for c in p.coeffs().iter().rev() {
            d = c_round(&Approx { re: &c_mul(&d, x).re + &v.re, im: &c_mul(&d, x).im + &v.im }, bits);
            let m = c_mul(&v, x);
            v = c_round(&Approx { re: m.re + BigRational::from_integer(c.clone()), im: m.im }, bits);
        }
        (v, d)
    };
    let tol = (bits as f64 / 2.0).min(1000.0);
    for _ in 0..(bits as usize).max(100) {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(&z[i]);
            if v.re.is_zero() && v.im.is_zero() {
                continue;
            }
            let Some(ratio) = c_div(&v, &d) else { continue };
            let mut s = Approx { re: BigRational::zero(), im: BigRational::zero() };
            for j in 0..n {
                if j != i {
                    if let Some(q) = c_div(&one, &c_sub(&z[i], &z[j])) {
                        s = Approx { re: s.re + q.re, im: s.im + q.im };
                    }
                }
            }
            let s = c_round(&s, bits);
            let Some(w) = c_div(&ratio, &c_sub(&one, &c_mul(&ratio, &s))) else { continue };
            let w = c_round(&w, bits);
            z[i] = c_sub(&z[i], &w);
            moved = moved.max(c_norm_f64(&w) / c_norm_f64(&z[i]).max(1.0));
        }
        if moved == 0.0 || moved.log2() < -tol {
            break;
        }
    }
    z
}

// ---------------------------------------------------------------------------
// certification

fn isolate(p: &IntPolynomial, dp: &IntPolynomial) -> Result<Vec<Enclosure>> {
    let deg = p.degree().unwrap();
    if deg == 1 {
        let c = p.coeffs();
        let root = BigRational::new(-c[0].clone(), c[1].clone());
        return Ok(vec![Enclosure::Real(RationalInterval::point(root))]);
    }
    let f64_guess = aberth_f64(p);
    let mut start: Vec<Approx> = match &f64_guess {
        Some(z) => z.iter().map(|c| Approx { re: f64_to_rational(c.re), im: f64_to_rational(c.im) }).collect(),
        None => (0..deg)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.7;
                Approx { re: f64_to_rational(t.cos()), im: f64_to_rational(t.sin()) }
            })
            .collect(),
    };
    if f64_guess.is_some() {
        if let Some(encl) = certify(p, dp, &start, 53) {
            return Ok(encl);
        }
    }
    let mut bits = 128u64;
    while bits <= 16_384 {
        start = aberth_dyadic(p, &start, bits);
        if let Some(encl) = certify(p, dp, &start, bits) {
            return Ok(encl);
        }
        bits *= 2;
    }
    Err(Error::RootNotIsolated(format!("could not certify the roots of {p}")))
}

fn certify(p: &IntPolynomial, dp: &IntPolynomial, approx: &[Approx], bits: u64) -> Option<Vec<Enclosure>> {
    let deg = approx.len();
    let pts: Vec<(f64, f64)> = approx.iter().map(|a| (rational_to_f64(&a.re), rational_to_f64(&a.im))).collect();
    let mut reals: Vec<RationalInterval> = Vec::new();
    let mut uppers: Vec<ComplexRectangle> = Vec::new();
    for (i, a) in approx.iter().enumerate() {
        let (x, y) = pts[i];
        let scale = x.hypot(y).max(1.0);
        let sep = (0..deg)
            .filter(|&j| j != i)
            .map(|j| (x - pts[j].0).hypot(y - pts[j].1))
            .fold(f64::INFINITY, f64::min);
        let radii: Vec<BigRational> = [bits.saturating_sub(20), bits / 2, bits / 4, 12]
            .iter()
            .map(|&k| BigRational::new(BigInt::one(), BigInt::one() << k.max(8)) * f64_to_rational(scale))
            .filter(|r| rational_to_f64(r) < sep / 4.0)
            .collect();
        let near_real = y.abs() < sep / 4.0 || y.abs() < scale * 2f64.powi(-(bits as i32) / 2);
        if near_real {
            let c = round_dyadic(&a.re, bits + 8);
            if let Some(x) = radii.iter().find_map(|r| certify_real(p, dp, &c, r, bits)) {
                reals.push(x);
            } else {
                return None;
            }
        } else if y > 0.0 {
            let c = ComplexRectangle::point(round_dyadic(&a.re, bits + 8), round_dyadic(&a.im, bits + 8));
            match radii.iter().find_map(|r| certify_complex(p, dp, &c, r, bits)) {
                Some(b) => uppers.push(b),
                None => return None,
            }
        }
    }
    if reals.len() + 2 * uppers.len() != deg {
        return None;
    }
    for i in 0..reals.len() {
        for j in i + 1..reals.len() {
            if reals[i].intersects(&reals[j]) {
                return None;
            }
        }
    }
    for i in 0..uppers.len() {
        if !uppers[i].im().lo().is_positive() {
            return None;
        }
        for j in i + 1..uppers.len() {
            if uppers[i].intersects(&uppers[j]) {
                return None;
            }
        }
    }
    reals.sort_by(|a, b| a.lo().cmp(b.lo()));
    uppers.sort_by(|a, b| a.re().lo().cmp(b.re().lo()).then(a.im().lo().cmp(b.im().lo())));
    let mut out: Vec<Enclosure> = reals.into_iter().map(Enclosure::Real).collect();
    for u in uppers {
        out.push(Enclosure::Complex(u.conj()));
        out.push(Enclosure::Complex(u));
    }
    Some(out)
}

fn certify_real(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    c: &BigRational,
    r: &BigRational,
    bits: u64,
) -> Option<RationalInterval> {
    if p.eval(c).is_zero() {
        return Some(RationalInterval::point(c.clone()));
    }
    let x = RationalInterval::from_sorted(c - r, c + r);
    let dc = dp.eval(c);
    if dc.is_zero() {
        return None;
    }
    let work = bits + 32;
    let y = round_dyadic(&dc.recip(), work);
    let pc = p.eval(c);
    let dx = eval_interval(dp, &x, work);
    let one = RationalInterval::point(BigRational::one());
    let k = &RationalInterval::point(c - &y * &pc)
        + &(&(&one - &dx.scale(&y)) * &(&x - &RationalInterval::point(c.clone()))).round_outward(work);
    x.strictly_contains(&k).then_some(k)
}

fn certify_complex(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    c: &ComplexRectangle,
    r: &BigRational,
    bits: u64,
) -> Option<ComplexRectangle> {
    let side = RationalInterval::from_sorted(-r.clone(), r.clone());
    let x = &ComplexRectangle::new(side.clone(), side) + c;
    if !x.im().lo().is_positive() {
        return None;
    }
    let k = krawczyk(p, dp, &x, c, bits + 32)?;
    x.strictly_contains(&k).then_some(k)
}
