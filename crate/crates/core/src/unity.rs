//! Roots of unity and the partition of a finite set into classes of
//! elements whose quotients are roots of unity.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed};

use crate::arith::IntPolynomial;
use crate::error::{Error, Result};
use crate::heights::OmegaSet;
use crate::numberfield::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnityVerdict {
    /// Multiplicative order when the element is a root of unity.
    pub order: Option<u64>,
}

impl UnityVerdict {
    pub fn is_root_of_unity(&self) -> bool {
        self.order.is_some()
    }
}

/// `Φ_n`, by dividing `X^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    let mut p = IntPolynomial::x_pow_minus_one(n as usize);
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.exact_div(&cyclotomic_poly(d)).expect("cyclotomic factors divide x^n - 1");
    }
    cache.lock().expect("cache").insert(n, p.clone());
    p
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Decide whether a primitive integer polynomial is cyclotomic, returning
/// its index.
pub fn cyclotomic_index(p: &IntPolynomial) -> Option<u64> {
    let k = p.degree()?;
    if k == 0 || !p.leading_coeff()?.is_one() || !p.coeff(0).abs().is_one() {
        return None;
    }
    let bound = binomial(BigInt::from(k), BigInt::from(k / 2));
    if p.coeffs().iter().any(|c| c.abs() > bound) {
        return None;
    }
    // phi(n) >= sqrt(n/2), so n <= 2k^2
    let k = k as u64;
    (1..=2 * k * k).filter(|&n| totient(n) == k).find(|&n| &cyclotomic_poly(n) == p)
}

pub fn root_of_unity_test(a: &FieldElement) -> Result<UnityVerdict> {
    if a.is_zero() {
        return Err(Error::ZeroElement("root of unity test"));
    }
    let order = cyclotomic_index(&a.minimal_poly());
    if let Some(n) = order {
        if !a.pow(n as i64)?.is_one() {
            return Err(Error::Soundness(format!("element {a} has cyclotomic minimal polynomial but a^{n} != 1")));
        }
    }
    Ok(UnityVerdict { order })
}

/// Partition of `Ω` (by index) into root-of-unity classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClassification {
    classes: Vec<Vec<usize>>,
}

impl EquivalenceClassification {
    /// Classes in order of their smallest index, each sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&i)).expect("index in partition")
    }
}

pub fn quotient_is_root_of_unity(a: &FieldElement, b: &FieldElement) -> Result<bool> {
    Ok(root_of_unity_test(&a.try_div(b)?)?.is_root_of_unity())
}

pub fn classify_omega(omega: &OmegaSet) -> Result<EquivalenceClassification> {
    let els = omega.elements();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..els.len() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if quotient_is_root_of_unity(&els[i], &els[class[0]])? {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    // pairwise audit: same class iff quotient is a root of unity
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let same = classes.iter().any(|c| c.contains(&i) && c.contains(&j));
            if quotient_is_root_of_unity(&els[i], &els[j])? != same {
                return Err(Error::Soundness(format!("root-of-unity relation not transitive at ({i}, {j})")));
            }
        }
    }
    Ok(EquivalenceClassification { classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3), IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_index(&IntPolynomial::from_i64(&[1, 0, -1, 0, 1])), Some(12));
        assert_eq!(cyclotomic_index(&IntPolynomial::from_i64(&[1, 1])), Some(2));
        assert_eq!(cyclotomic_index(&IntPolynomial::from_i64(&[-2, 0, 1])), None);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn totients_match_cyclotomic_degrees() {
        for n in 1..=60 {
            assert_eq!(cyclotomic_poly(n).degree(), Some(totient(n) as usize));
        }
    }
}
