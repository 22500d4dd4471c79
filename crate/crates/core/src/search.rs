//! The decision procedure: classify `Ω`, attach the degree and height
//! bounds, enumerate exponent pairs up to a cap, recover `A` and `B`
//! exactly and certify every hit.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::arith::transcendental::ln;
use crate::arith::{int, pow2, RationalInterval};
use crate::bounds::{bound_chain, BoundReport};
use crate::error::{Error, Result};
use crate::heights::{height_of_projective_point, omega_heights, HeightValue, OmegaSet};
use crate::lemma::{build_six_terms, vanishing_subsum_decomposition, PartitionType};
use crate::numberfield::FieldElement;
use crate::unity::{classify_omega, root_of_unity_test, EquivalenceClassification};

pub const DEFAULT_MAX_DEGREE: u64 = 200;

pub fn default_eps() -> BigRational {
    BigRational::new(BigInt::one(), pow2(40))
}

#[derive(Clone, Debug)]
pub struct SearchRequest {
    pub omega: OmegaSet,
    pub max_degree: u64,
    pub emit_binomials: bool,
    pub parallel_width: usize,
    /// Target width of height enclosures.
    pub eps: BigRational,
}

impl SearchRequest {
    pub fn new(omega: OmegaSet, max_degree: u64) -> Result<Self> {
        if max_degree < 2 {
            return Err(Error::Precondition("max_degree must be at least 2".into()));
        }
        Ok(SearchRequest { omega, max_degree, emit_binomials: true, parallel_width: 1, eps: default_eps() })
    }

    pub fn with_parallel_width(mut self, width: usize) -> Self {
        self.parallel_width = width.max(1);
        self
    }

    pub fn with_binomials(mut self, emit: bool) -> Self {
        self.emit_binomials = emit;
        self
    }

    pub fn with_eps(mut self, eps: BigRational) -> Self {
        self.eps = eps;
        self
    }
}

/// Exact zero of `ω^m + A ω^n + B` at element `index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCertificate {
    pub index: usize,
    pub residual: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedTrinomial {
    pub m: u64,
    pub n: u64,
    pub a: FieldElement,
    pub b: FieldElement,
    /// `h(1 : A : B)`.
    pub height: HeightValue,
    pub certificates: Vec<VanishingCertificate>,
    pub subsum_type: Option<PartitionType>,
}

impl CertifiedTrinomial {
    pub fn is_binomial(&self) -> bool {
        self.a.is_zero()
    }

    /// Evaluate at every element of `Ω` and compute the height; errors if
    /// the trinomial does not vanish on `Ω`.
    pub fn certify(omega: &OmegaSet, m: u64, n: u64, a: FieldElement, b: FieldElement, eps: &BigRational) -> Result<Self> {
        if !(m > n && n > 0) {
            return Err(Error::Precondition(format!("need m > n > 0, got ({m}, {n})")));
        }
        if b.is_zero() {
            return Err(Error::Precondition("B must be nonzero".into()));
        }
        let certificates = residuals(omega, m, n, &a, &b)?;
        if let Some(c) = certificates.iter().find(|c| !c.residual.is_zero()) {
            return Err(Error::Precondition(format!("trinomial does not vanish at element {}", c.index)));
        }
        let one = omega.field().one();
        let height = height_of_projective_point(&[one, a.clone(), b.clone()], eps)?;
        Ok(CertifiedTrinomial { m, n, a, b, height, certificates, subsum_type: None })
    }
}

fn residuals(omega: &OmegaSet, m: u64, n: u64, a: &FieldElement, b: &FieldElement) -> Result<Vec<VanishingCertificate>> {
    omega
        .elements()
        .iter()
        .enumerate()
        .map(|(index, w)| {
            let r = &(&w.pow(m as i64)? + &a.try_mul(&w.pow(n as i64)?)?) + b;
            Ok(VanishingCertificate { index, residual: r })
        })
        .collect()
}

/// Re-check a record by exact arithmetic.
pub fn verify_trinomial(omega: &OmegaSet, t: &CertifiedTrinomial) -> bool {
    if !(t.m > t.n && t.n > 0) || t.b.is_zero() {
        return false;
    }
    if !t.a.field().same(omega.field()) || !t.b.field().same(omega.field()) {
        return false;
    }
    if t.certificates.len() != omega.len() || t.certificates.iter().enumerate().any(|(i, c)| c.index != i) {
        return false;
    }
    match residuals(omega, t.m, t.n, &t.a, &t.b) {
        Ok(fresh) => fresh.iter().zip(&t.certificates).all(|(f, c)| f.residual.is_zero() && c.residual.is_zero()),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    Unique { a: FieldElement, b: FieldElement },
    Inconsistent,
    Underdetermined,
}

/// Solve `p_m[i] + A p_n[i] + B = 0` for all `i`.
fn solve_from_powers(p_m: &[&FieldElement], p_n: &[&FieldElement]) -> Result<Recovery> {
    // B = -p_m[0] - A p_n[0]; the rest give (p_n[i] - p_n[0]) A = p_m[0] - p_m[i]
    let pivot = (1..p_n.len()).find(|&i| p_n[i] != p_n[0]);
    let Some(i) = pivot else {
        return Ok(if p_m.iter().all(|x| *x == p_m[0]) { Recovery::Underdetermined } else { Recovery::Inconsistent });
    };
    let a = (p_m[0] - p_m[i]).try_div(&(p_n[i] - p_n[0]))?;
    let b = -&(p_m[0] + &(&a * p_n[0]));
    let consistent = p_m.iter().zip(p_n).all(|(x, y)| (&(*x + &(&a * *y)) + &b).is_zero());
    Ok(if consistent { Recovery::Unique { a, b } } else { Recovery::Inconsistent })
}

pub fn recover_coefficients(omega: &OmegaSet, m: u64, n: u64) -> Result<Recovery> {
    if !(m > n && n > 0) {
        return Err(Error::Precondition(format!("need m > n > 0, got ({m}, {n})")));
    }
    let p_m = omega.elements().iter().map(|w| w.pow(m as i64)).collect::<Result<Vec<_>>>()?;
    let p_n = omega.elements().iter().map(|w| w.pow(n as i64)).collect::<Result<Vec<_>>>()?;
    solve_from_powers(&p_m.iter().collect::<Vec<_>>(), &p_n.iter().collect::<Vec<_>>())
}

/// `ω ↦ ω^k` collapses `Ω` onto the roots of `g`, so `g(X^k)` vanishes on
/// `Ω`. `sample` is a trinomial multiple of `g(X^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyWitness {
    pub k: u64,
    /// Coefficients of the monic `g`, constant term first; degree 1 or 2.
    pub g: Vec<FieldElement>,
    /// `(m, n, A, B)`.
    pub sample: (u64, u64, FieldElement, FieldElement),
}

impl FamilyWitness {
    /// Coefficients of `g(X^k)`, constant term first.
    pub fn divisor(&self) -> Vec<FieldElement> {
        let zero = self.g[0].field().zero();
        let k = self.k as usize;
        let mut out = vec![zero; k * (self.g.len() - 1) + 1];
        for (i, c) in self.g.iter().enumerate() {
            out[i * k] = c.clone();
        }
        out
    }

    /// Coefficients of the sample trinomial, constant term first.
    pub fn sample_poly(&self) -> Vec<FieldElement> {
        let (m, n, a, b) = &self.sample;
        let f = a.field();
        let mut out = vec![f.zero(); *m as usize + 1];
        out[0] = b.clone();
        out[*n as usize] = a.clone();
        out[*m as usize] = f.one();
        out
    }

    /// Exact division of the sample by `g(X^k)` and vanishing of the sample
    /// on `Ω`.
    pub fn validate(&self, omega: &OmegaSet) -> Result<bool> {
        let (m, n, a, b) = &self.sample;
        let (_, rem) = poly_div_rem(&self.sample_poly(), &self.divisor())?;
        if rem.iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
        Ok(residuals(omega, *m, *n, a, b)?.iter().all(|c| c.residual.is_zero()))
    }
}

/// Long division of polynomials with field coefficients by a monic divisor.
pub fn poly_div_rem(num: &[FieldElement], den: &[FieldElement]) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let lead = den.last().ok_or(Error::ZeroPolynomial("divisor"))?;
    if !lead.is_one() {
        return Err(Error::Precondition("divisor must be monic".into()));
    }
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return Ok((vec![], rem));
    }
    let zero = lead.field().zero();
    let mut quot = vec![zero; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] = &rem[i + j] - &(&c * d);
        }
        quot[i] = c;
    }
    rem.truncate(dd);
    Ok((quot, rem))
}

/// Least `k` such that `ω ↦ ω^k` takes at most two values on `Ω`, with
/// the polynomial `g` whose roots are those values. Needs at most two classes.
pub fn family_witness(omega: &OmegaSet, classes: &EquivalenceClassification) -> Result<FamilyWitness> {
    let els = omega.elements();
    let mut period: u64 = 1;
    for class in classes.classes() {
        for &i in &class[1..] {
            let order = root_of_unity_test(&els[i].try_div(&els[class[0]])?)?
                .order
                .ok_or_else(|| Error::Soundness("class member is not a root-of-unity multiple".into()))?;
            period = period.lcm(&order);
        }
    }
    let field = omega.field();
    for k in 1..=period {
        let mut values: Vec<FieldElement> = Vec::new();
        for w in els {
            let p = w.pow(k as i64)?;
            if !values.contains(&p) {
                values.push(p);
            }
            if values.len() > 2 {
                break;
            }
        }
        match values.as_slice() {
            [c] => {
                // (Y - c)(Y + e) with e chosen so that the middle term survives
                let e = field.from_int(if c == &field.from_int(1) { 2 } else { 1 });
                let a = &e - c;
                let b = -&(c * &e);
                return Ok(FamilyWitness { k, g: vec![-c, field.one()], sample: (2 * k, k, a, b) });
            }
            [c1, c2] => {
                let a = -&(c1 + c2);
                let b = c1 * c2;
                return Ok(FamilyWitness { k, g: vec![b.clone(), a.clone(), field.one()], sample: (2 * k, k, a, b) });
            }
            _ => {}
        }
    }
    Err(Error::Soundness(format!("no k <= {period} collapses a two-class set onto two values")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// At most two classes: infinitely many trinomials vanish on `Ω`.
    InfiniteFamily { class_count: usize, witness: FamilyWitness },
    FiniteSearch { class_count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Search skipped because `Ω` lies in an infinite family.
    Skipped,
    CompleteUpToCap(u64),
    /// The cap reaches the proven degree bound.
    TheoremComplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub classes: EquivalenceClassification,
    pub classification: Classification,
    pub bound_report: Option<BoundReport>,
    pub hits: Vec<CertifiedTrinomial>,
    pub completeness: Completeness,
}

/// Root-of-unity classes of `Ω`, plus the bound chain when there are at
/// least three classes. `d` is the ambient degree.
pub fn classify_and_bound(omega: &OmegaSet, eps: &BigRational) -> Result<(EquivalenceClassification, Option<BoundReport>)> {
    let classes = classify_omega(omega)?;
    if classes.class_count() < 3 {
        return Ok((classes, None));
    }
    let (h, ht) = omega_heights(omega, eps)?;
    let report = bound_chain(omega.field().degree() as u64, &ht, &h)?;
    Ok((classes, Some(report)))
}

/// `ln x <= bound` holds for certain.
fn log_at_most(x: &BigRational, bound: &HeightValue) -> Result<bool> {
    if !x.is_positive() {
        return Ok(true);
    }
    let lx = ln(&RationalInterval::point(x.clone()), 64)?;
    Ok(lx.hi() <= bound.lo())
}

/// `(A, B)` from two elements of distinct classes, when `α^n ≠ β^n`.
fn two_root_formula(alpha: &FieldElement, beta: &FieldElement, m: u64, n: u64) -> Result<Option<(FieldElement, FieldElement)>> {
    let (m, n) = (m as i64, n as i64);
    let (an, bn) = (alpha.pow(n)?, beta.pow(n)?);
    if an == bn {
        return Ok(None);
    }
    let a = -&(&alpha.pow(m)? - &beta.pow(m)?).try_div(&(&an - &bn))?;
    let b = -&(&alpha.pow(m - n)? - &beta.pow(m - n)?).try_div(&(&alpha.pow(-n)? - &beta.pow(-n)?))?;
    Ok(Some((a, b)))
}

pub fn run_search(req: &SearchRequest) -> Result<SearchOutcome> {
    let omega = &req.omega;
    let (classes, bound_report) = classify_and_bound(omega, &req.eps)?;
    if classes.class_count() <= 2 {
        let witness = family_witness(omega, &classes)?;
        if !witness.validate(omega)? {
            return Err(Error::Soundness("family witness failed validation".into()));
        }
        return Ok(SearchOutcome {
            classification: Classification::InfiniteFamily { class_count: classes.class_count(), witness },
            classes,
            bound_report,
            hits: vec![],
            completeness: Completeness::Skipped,
        });
    }
    let report = bound_report.expect("three classes carry a bound");
    let cap = req.max_degree;
    let els = omega.elements();
    let mut powers: Vec<Vec<FieldElement>> = Vec::with_capacity(els.len());
    for w in els {
        let mut row = vec![omega.field().one()];
        for k in 1..=cap as usize {
            row.push(&row[k - 1] * w);
        }
        powers.push(row);
    }
    let reps: Vec<&FieldElement> = classes.classes().iter().take(3).map(|c| &els[c[0]]).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(req.parallel_width)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let per_m: Vec<Vec<CertifiedTrinomial>> = pool.install(|| {
        (2..=cap)
            .into_par_iter()
            .map(|m| -> Result<Vec<CertifiedTrinomial>> {
                let mut found = Vec::new();
                let p_m: Vec<&FieldElement> = powers.iter().map(|row| &row[m as usize]).collect();
                for n in 1..m {
                    let p_n: Vec<&FieldElement> = powers.iter().map(|row| &row[n as usize]).collect();
                    let Recovery::Unique { a, b } = solve_from_powers(&p_m, &p_n)? else { continue };
                    if b.is_zero() {
                        continue;
                    }
                    if a.is_zero() {
                        return Err(Error::TheoryViolation(format!(
                            "binomial X^{m} + B vanishes on a set with three classes"
                        )));
                    }
                    if let Some((a2, b2)) = two_root_formula(reps[0], reps[1], m, n)? {
                        if a2 != a || b2 != b {
                            return Err(Error::Soundness(format!("two-root formula disagrees at ({m}, {n})")));
                        }
                    }
                    let mut hit = CertifiedTrinomial::certify(omega, m, n, a, b, &req.eps)?;
                    let sys = build_six_terms(reps[0], reps[1], reps[2], m as i64, n as i64)?;
                    hit.subsum_type = Some(vanishing_subsum_decomposition(&sys)?);
                    if !log_at_most(&int(m as i64), &report.log_degree_max())? {
                        return Err(Error::TheoryViolation(format!("degree {m} exceeds the proven bound")));
                    }
                    if !log_at_most(hit.height.lo(), &report.log_height_max())? {
                        return Err(Error::TheoryViolation(format!("height at ({m}, {n}) exceeds the proven bound")));
                    }
                    found.push(hit);
                }
                Ok(found)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut hits: Vec<CertifiedTrinomial> = per_m.into_iter().flatten().collect();
    hits.sort_by(|x, y| (x.m, x.n).cmp(&(y.m, y.n)));
    if !req.emit_binomials {
        hits.retain(|h| !h.is_binomial());
    }
    let log_cap = ln(&RationalInterval::point(int(cap as i64)), 64)?;
    let completeness = if log_cap.lo().cmp(report.log_degree_max().hi()) != Ordering::Less {
        Completeness::TheoremComplete
    } else {
        Completeness::CompleteUpToCap(cap)
    };
    Ok(SearchOutcome {
        classification: Classification::FiniteSearch { class_count: classes.class_count() },
        classes,
        bound_report: Some(report),
        hits,
        completeness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::presets;

    fn rationals(xs: &[i64]) -> OmegaSet {
        let q = NumberField::rationals();
        OmegaSet::new(&q, xs.iter().map(|&x| q.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn recovery_cases() {
        let omega = presets::cubic_roots().unwrap();
        let Recovery::Unique { a, b } = recover_coefficients(&omega, 5, 1).unwrap() else { panic!() };
        assert!(a.is_one() && b.is_one());
        assert_eq!(recover_coefficients(&rationals(&[1, 2, 3]), 2, 1).unwrap(), Recovery::Inconsistent);
        assert_eq!(recover_coefficients(&rationals(&[1]), 4, 3).unwrap(), Recovery::Underdetermined);
        assert!(recover_coefficients(&rationals(&[1]), 3, 3).is_err());
    }

    #[test]
    fn rational_triple_has_no_hits() {
        let out = run_search(&SearchRequest::new(rationals(&[1, 2, 3]), 10).unwrap()).unwrap();
        assert!(out.hits.is_empty());
        assert_eq!(out.completeness, Completeness::CompleteUpToCap(10));
        assert_eq!(out.classification, Classification::FiniteSearch { class_count: 3 });
    }

    #[test]
    fn cube_roots_family() {
        let omega = presets::cube_roots().unwrap();
        let out = run_search(&SearchRequest::new(omega.clone(), 10).unwrap()).unwrap();
        let Classification::InfiniteFamily { class_count: 1, witness } = out.classification else { panic!() };
        assert_eq!(witness.k, 1);
        let f = omega.field();
        assert_eq!(witness.g, vec![f.one(), f.one(), f.one()]);
        assert!(witness.validate(&omega).unwrap());
        assert!(out.hits.is_empty());
    }

    #[test]
    fn golden_family() {
        let omega = presets::golden().unwrap();
        let out = run_search(&SearchRequest::new(omega.clone(), 10).unwrap()).unwrap();
        let Classification::InfiniteFamily { class_count: 2, witness } = out.classification else { panic!() };
        let f = omega.field();
        assert_eq!(witness.g, vec![f.from_int(-1), f.from_int(-1), f.one()]);
        // (X^2 - X - 1)(X + 1) = X^3 - 2X - 1
        let cubic = vec![f.from_int(-1), f.from_int(-2), f.zero(), f.one()];
        let (q, r) = poly_div_rem(&cubic, &witness.divisor()).unwrap();
        assert_eq!(q, vec![f.one(), f.one()]);
        assert!(r.iter().all(FieldElement::is_zero));
    }

    #[test]
    fn single_class_binomial_witness() {
        let omega = rationals(&[1, -1]);
        let out = run_search(&SearchRequest::new(omega.clone(), 5).unwrap()).unwrap();
        let Classification::InfiniteFamily { witness, .. } = out.classification else { panic!() };
        assert_eq!(witness.k, 1);
        assert!(witness.validate(&omega).unwrap());
        let omega = rationals(&[3]);
        let out = run_search(&SearchRequest::new(omega.clone(), 5).unwrap()).unwrap();
        let Classification::InfiniteFamily { witness, .. } = out.classification else { panic!() };
        assert_eq!(witness.g.len(), 2);
        assert!(witness.validate(&omega).unwrap());
    }

    #[test]
    fn cubic_hit_and_tampering() {
        let omega = presets::cubic_roots().unwrap();
        let out = run_search(&SearchRequest::new(omega.clone(), 12).unwrap()).unwrap();
        let hit = out.hits.iter().find(|h| (h.m, h.n) == (5, 1)).expect("X^5 + X + 1");
        assert!(verify_trinomial(&omega, hit));
        assert!(hit.subsum_type.is_some());
        let mut bad = hit.clone();
        bad.b = &bad.b + &omega.field().one();
        assert!(!verify_trinomial(&omega, &bad));
        let mut swapped = hit.clone();
        std::mem::swap(&mut swapped.m, &mut swapped.n);
        assert!(!verify_trinomial(&omega, &swapped));
    }

    #[test]
    fn sqrt2_triple_is_bounded() {
        let (classes, report) = classify_and_bound(&presets::sqrt2_triple().unwrap(), &default_eps()).unwrap();
        assert_eq!(classes.class_count(), 3);
        assert_eq!(report.unwrap().d, 2);
    }
}
