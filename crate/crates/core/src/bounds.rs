//! Effective estimates, all on the natural-log scale as rational intervals:
//! Matveev's lower bound for linear forms in logarithms, lower bounds for
//! `|α^k - β^k|`, the degree/height bound chain for a set with at least
//! three root-of-unity classes, and the single-element corollary.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::transcendental::{exp, ln, ln10_constant, ln2_constant};
use crate::arith::{int, pow2, rat, RationalInterval};
use crate::error::{Error, Result};
use crate::heights::{height_of_element, HeightValue};
use crate::numberfield::FieldElement;

const BITS: u64 = 200;

fn default_eps() -> BigRational {
    BigRational::new(BigInt::one(), pow2(50))
}

/// Parameters of Matveev's theorem. `a[k]` encloses `A_k`; the `b_i` only
/// enter through `b >= max |b_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatveevInput {
    d: u64,
    a: Vec<RationalInterval>,
    b: BigRational,
}

impl MatveevInput {
    pub fn new(d: u64, a: Vec<RationalInterval>, b: BigRational) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("field degree must be positive".into()));
        }
        if a.is_empty() {
            return Err(Error::Precondition("need at least one logarithm".into()));
        }
        if let Some(k) = a.iter().position(|x| x.lo() < &rat(4, 25)) {
            return Err(Error::Precondition(format!("A_{} is below 0.16", k + 1)));
        }
        if b < BigRational::one() {
            return Err(Error::Precondition("B must be at least 1".into()));
        }
        Ok(MatveevInput { d, a, b })
    }

    pub fn s(&self) -> usize {
        self.a.len()
    }
}

/// `-2^{6s+20} d^2 (1 + ln d) A_1...A_s (1 + ln B)`.
pub fn matveev_lower_bound(input: &MatveevInput) -> HeightValue {
    let s = input.s() as u64;
    let d = int(input.d as i64);
    let one = RationalInterval::point(BigRational::one());
    let log_d = ln(&RationalInterval::point(d.clone()), BITS).expect("d >= 1");
    let log_b = ln(&RationalInterval::point(input.b.clone()), BITS).expect("B >= 1");
    let mut v = RationalInterval::point(BigRational::from_integer(pow2(6 * s + 20)) * &d * &d);
    v = &v * &(&one + &log_d);
    for a in &input.a {
        v = &v * a;
    }
    v = &v * &(&one + &log_b);
    HeightValue::new(-&v)
}

fn log_ratio_height(alpha: &FieldElement, beta: &FieldElement) -> Result<HeightValue> {
    height_of_element(&alpha.try_div(beta)?, &default_eps())
}

/// Log of the lower bound for `|α^k - β^k|`. With `|α| > |β|` this is
/// `k ln|α| - d^2 (h(α/β) + 1)`; with `|α| = |β|` it is
/// `k ln|α| - 10^12 d^4 (h(α/β) + 1) ln(k + 1)`. `d` is the ambient degree.
pub fn power_difference_lower_bound(alpha: &FieldElement, beta: &FieldElement, k: u64) -> Result<HeightValue> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if beta.is_zero() || alpha.is_zero() {
        return Err(Error::ZeroElement("power difference bound"));
    }
    let order = alpha.compare_modulus(beta)?;
    if order == Ordering::Less {
        return Err(Error::Precondition("|alpha| < |beta|; swap the arguments".into()));
    }
    if alpha.pow(k as i64)? == beta.pow(k as i64)? {
        return Err(Error::Precondition("alpha^k = beta^k".into()));
    }
    let d = int(alpha.field().degree() as i64);
    let h = log_ratio_height(alpha, beta)?;
    let h1 = h.enclosure() + &RationalInterval::point(BigRational::one());
    let log_alpha = alpha.log_modulus(&default_eps())?.scale(&int(k as i64));
    let penalty = match order {
        Ordering::Greater => h1.scale(&(&d * &d)),
        _ => {
            let log_k1 = ln(&RationalInterval::point(int(k as i64 + 1)), BITS)?;
            let c = BigRational::from_integer(BigInt::from(10).pow(12)) * &d * &d * &d * &d;
            (&h1 * &log_k1).scale(&c)
        }
    };
    Ok(HeightValue::new(&log_alpha - &penalty))
}

/// Positive lower bound `½ e^{-d^2 (h(α/β) + 1)}` for `ln|α/β|` when
/// `|α| > |β|`.
pub fn log_ratio_lower_bound(alpha: &FieldElement, beta: &FieldElement) -> Result<HeightValue> {
    if alpha.compare_modulus(beta)? != Ordering::Greater {
        return Err(Error::Precondition("moduli are not strictly ordered as |alpha| > |beta|".into()));
    }
    let d = int(alpha.field().degree() as i64);
    let h = log_ratio_height(alpha, beta)?;
    let expo = (h.enclosure() + &RationalInterval::point(BigRational::one())).scale(&-(&d * &d));
    Ok(HeightValue::new(exp(&expo, 64).scale(&rat(1, 2))))
}

/// The evaluated bound chain, in natural-log scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d: u64,
    pub h_omega: HeightValue,
    pub h_tilde: Option<HeightValue>,
    /// `ln` of the bound on `n`.
    pub log_n_max: Option<HeightValue>,
    /// `ln` of the bound on `m - n`.
    pub log_mn_max: Option<HeightValue>,
    /// Degree bound from the chain in terms of `h̃`.
    pub log_degree_max_chain: Option<HeightValue>,
    /// Degree bound in the headline form.
    pub log_degree_max_theorem: HeightValue,
    /// Height bound from the chain.
    pub log_height_max_chain: Option<HeightValue>,
    /// Height bound in the headline form.
    pub log_height_max_theorem: HeightValue,
}

fn interval_min(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    RationalInterval::new(a.lo().min(b.lo()).clone(), a.hi().min(b.hi()).clone()).expect("ordered")
}

impl BoundReport {
    /// The better of the two degree bounds.
    pub fn log_degree_max(&self) -> HeightValue {
        match &self.log_degree_max_chain {
            Some(c) => HeightValue::new(interval_min(c.enclosure(), self.log_degree_max_theorem.enclosure())),
            None => self.log_degree_max_theorem.clone(),
        }
    }

    /// The better of the two height bounds.
    pub fn log_height_max(&self) -> HeightValue {
        match &self.log_height_max_chain {
            Some(c) => HeightValue::new(interval_min(c.enclosure(), self.log_height_max_theorem.enclosure())),
            None => self.log_height_max_theorem.clone(),
        }
    }
}

/// `c ln 10 + k d^2 (h + 1)`.
fn chain_term(c: i64, k: i64, d: u64, h: &RationalInterval) -> HeightValue {
    let d2 = int((d * d) as i64);
    let lin = (h + &RationalInterval::point(BigRational::one())).scale(&(d2 * int(k)));
    HeightValue::new(&ln10_constant().scale(&int(c)) + &lin)
}

/// Fill the bound chain from `d`, `h̃(Ω)` and `h(Ω)`. Requires
/// `h̃ <= 2 h(Ω)`, which holds for every genuine set.
pub fn bound_chain(d: u64, h_tilde: &HeightValue, h_omega: &HeightValue) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    if h_omega.lo() < &BigRational::zero() || h_tilde.lo() < &BigRational::zero() {
        return Err(Error::Precondition("heights are non-negative".into()));
    }
    if h_tilde.lo() > &(h_omega.hi() * int(2)) {
        return Err(Error::Precondition("h_tilde exceeds 2 h_omega".into()));
    }
    let ht = h_tilde.enclosure();
    let ho = h_omega.enclosure();
    let report = BoundReport {
        d,
        h_omega: h_omega.clone(),
        h_tilde: Some(h_tilde.clone()),
        log_n_max: Some(chain_term(50, 5, d, ht)),
        log_mn_max: Some(chain_term(30, 3, d, ht)),
        log_degree_max_chain: Some(chain_term(60, 5, d, ht)),
        log_degree_max_theorem: chain_term(60, 10, d, ho),
        log_height_max_chain: Some(chain_term(65, 10, d, ho)),
        log_height_max_theorem: chain_term(70, 10, d, ho),
    };
    // m = n + (m - n) <= 2 max(e^a, e^b)
    let a = report.log_n_max.as_ref().unwrap();
    let b = report.log_mn_max.as_ref().unwrap();
    let lse = a.hi().max(b.hi()) + ln2_constant().hi();
    if report.log_degree_max().lo() < &lse {
        return Err(Error::Soundness("degree bound below the sum of its components".into()));
    }
    Ok(report)
}

/// Inputs of the single-element corollary: `d = [K:Q]`, `nu = [K(α):K]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryInput {
    pub d: u64,
    pub nu: u64,
    pub h_alpha: HeightValue,
}

/// `60 ln 10 + 10 d^2 ν^6 (h(α) + 1)` for degrees and `70 ln 10 + ...` for
/// heights.
pub fn corollary_bounds(input: &CorollaryInput) -> Result<BoundReport> {
    if input.d == 0 || input.nu == 0 {
        return Err(Error::Precondition("d and nu must be positive".into()));
    }
    let nu6 = int(input.nu.pow(6) as i64);
    let d2 = int((input.d * input.d) as i64);
    let lin = (input.h_alpha.enclosure() + &RationalInterval::point(BigRational::one())).scale(&(d2 * nu6 * int(10)));
    Ok(BoundReport {
        d: input.d,
        h_omega: input.h_alpha.clone(),
        h_tilde: None,
        log_n_max: None,
        log_mn_max: None,
        log_degree_max_chain: None,
        log_degree_max_theorem: HeightValue::new(&ln10_constant().scale(&int(60)) + &lin),
        log_height_max_chain: None,
        log_height_max_theorem: HeightValue::new(&ln10_constant().scale(&int(70)) + &lin),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_to_f64;

    fn f(h: &HeightValue) -> f64 {
        rational_to_f64(&h.enclosure().midpoint())
    }

    fn pt(x: BigRational) -> HeightValue {
        HeightValue::new(RationalInterval::point(x))
    }

    #[test]
    fn matveev_direct_substitution() {
        let a = RationalInterval::point(rat(4, 25));
        let v = matveev_lower_bound(&MatveevInput::new(1, vec![a.clone(), a], int(2)).unwrap());
        let expect = -(2f64.powi(32)) * 0.0256 * (1.0 + 2f64.ln());
        assert!((f(&v) / expect - 1.0).abs() < 1e-12);
        assert!(MatveevInput::new(1, vec![RationalInterval::point(rat(3, 20))], int(2)).is_err());
        assert!(MatveevInput::new(1, vec![RationalInterval::point(int(1))], rat(1, 2)).is_err());
    }

    #[test]
    fn equal_modulus_envelope() {
        // s = 2, d = 1, A = (π, π), B = k + 1 against c (h + 1) ln(k + 1) with h = 0
        let pi = crate::arith::transcendental::pi_constant().clone();
        for k in 1..=50i64 {
            let v = matveev_lower_bound(&MatveevInput::new(1, vec![pi.clone(), pi.clone()], int(k + 1)).unwrap());
            let lk = ((k + 1) as f64).ln();
            assert!(f(&v) >= -1e12 * lk);
            assert_eq!(f(&v) >= -1e11 * lk, k > 1, "k = {k}");
        }
    }

    #[test]
    fn chain_examples() {
        let r = bound_chain(1, &HeightValue::zero(), &HeightValue::zero()).unwrap();
        let ln10 = 10f64.ln();
        assert!((f(&r.log_degree_max_theorem) - (60.0 * ln10 + 10.0)).abs() < 1e-9);
        assert!((f(r.log_degree_max_chain.as_ref().unwrap()) - (60.0 * ln10 + 5.0)).abs() < 1e-9);
        let l2 = ln2_constant().clone();
        let r3 = bound_chain(3, &HeightValue::new(l2.scale(&int(2))), &HeightValue::new(l2)).unwrap();
        assert!((f(&r3.log_degree_max_theorem) - (60.0 * ln10 + 90.0 * (1.0 + 2f64.ln()))).abs() < 1e-9);
        let up = bound_chain(2, &pt(int(1)), &pt(int(1))).unwrap();
        let base = bound_chain(2, &pt(int(0)), &pt(int(1))).unwrap();
        let diff = up.log_n_max.unwrap().enclosure().lo() - base.log_n_max.unwrap().enclosure().lo();
        assert_eq!(diff, int(20));
    }

    #[test]
    fn corollary_examples() {
        let ln10 = 10f64.ln();
        let r = corollary_bounds(&CorollaryInput { d: 1, nu: 3, h_alpha: HeightValue::zero() }).unwrap();
        assert!((f(&r.log_degree_max_theorem) - (60.0 * ln10 + 7290.0)).abs() < 1e-9);
        let r = corollary_bounds(&CorollaryInput { d: 2, nu: 3, h_alpha: pt(int(1)) }).unwrap();
        assert!((f(&r.log_degree_max_theorem) - (60.0 * ln10 + 58320.0)).abs() < 1e-9);
        let single = corollary_bounds(&CorollaryInput { d: 3, nu: 1, h_alpha: pt(int(1)) }).unwrap();
        let chain = bound_chain(3, &pt(int(1)), &pt(int(1))).unwrap();
        assert_eq!(single.log_degree_max_theorem, chain.log_degree_max_theorem);
    }
}
