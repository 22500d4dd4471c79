//! Instance checkers for the combinatorics behind suitable pairs: the
//! six-term determinant identity, its decomposition into primitive
//! vanishing blocks, the two multiset statements about root-of-unity
//! pairings and ratio-constant splittings, and the equal-modulus statement
//! for three roots of a trinomial.
//!
//! Indices are 0-based positions in the six-tuple throughout.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::numberfield::FieldElement;
use crate::unity::quotient_is_root_of_unity;

const FULL: u8 = 0b11_1111;

/// The signed six terms whose sum is `det [[α^m, α^n, 1], [β^m, β^n, 1], [γ^m, γ^n, 1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTermSystem {
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
    m: i64,
    n: i64,
    terms: [FieldElement; 6],
}

impl SixTermSystem {
    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn exponents(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    /// `(α^mβ^n, -α^nβ^m, -α^mγ^n, α^nγ^m, β^mγ^n, -β^nγ^m)`.
    pub fn terms(&self) -> &[FieldElement; 6] {
        &self.terms
    }

    pub fn sum(&self) -> FieldElement {
        self.terms.iter().skip(1).fold(self.terms[0].clone(), |acc, t| &acc + t)
    }
}

fn check_exponents(m: i64, n: i64) -> Result<()> {
    if m == n || m == 0 || n == 0 {
        return Err(Error::Precondition(format!("exponents ({m}, {n}) need m != n and both nonzero")));
    }
    Ok(())
}

fn check_nonzero(els: [&FieldElement; 3]) -> Result<()> {
    if els.iter().any(|e| e.is_zero()) {
        return Err(Error::ZeroElement("six-term system"));
    }
    Ok(())
}

/// Rule of Sarrus on the rows `(x^m, x^n, 1)`.
fn sarrus(rows: [[&FieldElement; 3]; 3]) -> FieldElement {
    let p = |a: &FieldElement, b: &FieldElement, c: &FieldElement| &(a * b) * c;
    let [r0, r1, r2] = rows;
    let plus = &(&p(r0[0], r1[1], r2[2]) + &p(r0[1], r1[2], r2[0])) + &p(r0[2], r1[0], r2[1]);
    let minus = &(&p(r0[2], r1[1], r2[0]) + &p(r0[1], r1[0], r2[2])) + &p(r0[0], r1[2], r2[1]);
    &plus - &minus
}

pub fn build_six_terms(
    alpha: &FieldElement,
    beta: &FieldElement,
    gamma: &FieldElement,
    m: i64,
    n: i64,
) -> Result<SixTermSystem> {
    check_exponents(m, n)?;
    check_nonzero([alpha, beta, gamma])?;
    if !alpha.field().same(beta.field()) || !alpha.field().same(gamma.field()) {
        return Err(Error::MixedFields);
    }
    let (am, an) = (alpha.pow(m)?, alpha.pow(n)?);
    let (bm, bn) = (beta.pow(m)?, beta.pow(n)?);
    let (gm, gn) = (gamma.pow(m)?, gamma.pow(n)?);
    let terms = [&am * &bn, -&(&an * &bm), -&(&am * &gn), &an * &gm, &bm * &gn, -&(&bn * &gm)];
    let one = alpha.field().one();
    let det = sarrus([[&am, &an, &one], [&bm, &bn, &one], [&gm, &gn, &one]]);
    let sys = SixTermSystem { alpha: alpha.clone(), beta: beta.clone(), gamma: gamma.clone(), m, n, terms };
    if sys.sum() != det {
        return Err(Error::Soundness("six-term sum differs from the determinant".into()));
    }
    Ok(sys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    ThreeThree,
    FourTwo,
    SixZero,
}

impl Signature {
    pub fn sizes(self) -> (usize, usize) {
        match self {
            Signature::ThreeThree => (3, 3),
            Signature::FourTwo => (4, 2),
            Signature::SixZero => (6, 0),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.sizes();
        write!(f, "({a},{b})")
    }
}

/// A split of the six positions into primitive vanishing blocks `V` and `W`
/// (`W` empty for `(6,0)`). For `(3,3)` the block holding position 0 is `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionType {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub signature: Signature,
}

fn indices(mask: u8) -> Vec<usize> {
    (0..6).filter(|i| mask >> i & 1 == 1).collect()
}

/// Masks of nonempty subsets whose terms sum to zero with no vanishing
/// proper nonempty subsum.
fn primitive_vanishing_masks(terms: &[FieldElement; 6]) -> Vec<u8> {
    let zero = terms[0].field().zero();
    let mut sums = vec![zero.clone(); 64];
    for mask in 1..64u8 {
        let low = mask.trailing_zeros() as usize;
        sums[mask as usize] = &sums[(mask & (mask - 1)) as usize] + &terms[low];
    }
    let vanishes: Vec<bool> = sums.iter().map(|s| s.is_zero()).collect();
    (1..64u8)
        .filter(|&mask| vanishes[mask as usize])
        .filter(|&mask| {
            let mut sub = (mask - 1) & mask;
            while sub > 0 {
                if vanishes[sub as usize] {
                    return false;
                }
                sub = (sub - 1) & mask;
            }
            true
        })
        .collect()
}

/// Every way to write the full index set as a disjoint union of primitive
/// vanishing blocks.
fn block_partitions(primitive: &[u8]) -> Vec<Vec<u8>> {
    fn go(rest: u8, primitive: &[u8], acc: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        let low = 1u8 << rest.trailing_zeros();
        for &b in primitive.iter().filter(|&&b| b & low != 0 && b & !rest == 0) {
            acc.push(b);
            go(rest & !b, primitive, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(FULL, primitive, &mut Vec::new(), &mut out);
    out
}

fn partition_type(blocks: &[u8]) -> Option<PartitionType> {
    let sizes: Vec<u32> = blocks.iter().map(|b| b.count_ones()).collect();
    match sizes.as_slice() {
        [6] => Some(PartitionType { v: indices(FULL), w: vec![], signature: Signature::SixZero }),
        [a, b] => {
            let (v, w, signature) = match (a, b) {
                (3, 3) => {
                    let (v, w) = if blocks[0] & 1 == 1 { (blocks[0], blocks[1]) } else { (blocks[1], blocks[0]) };
                    (v, w, Signature::ThreeThree)
                }
                (4, 2) => (blocks[0], blocks[1], Signature::FourTwo),
                (2, 4) => (blocks[1], blocks[0], Signature::FourTwo),
                _ => return None,
            };
            Some(PartitionType { v: indices(v), w: indices(w), signature })
        }
        _ => None,
    }
}

/// Decompose a vanishing six-term sum. Among admissible decompositions the
/// one with the lexicographically least `(V, W)` index sequence is returned.
pub fn decompose_terms(terms: &[FieldElement; 6]) -> Result<PartitionType> {
    if terms.iter().any(|t| t.is_zero()) {
        return Err(Error::ZeroElement("six-term decomposition"));
    }
    let total = terms.iter().skip(1).fold(terms[0].clone(), |acc, t| &acc + t);
    if !total.is_zero() {
        return Err(Error::Precondition("terms do not sum to zero".into()));
    }
    let all = block_partitions(&primitive_vanishing_masks(terms));
    let best = all
        .iter()
        .filter_map(|blocks| partition_type(blocks))
        .min_by(|a, b| (&a.v, &a.w).cmp(&(&b.v, &b.w)));
    best.ok_or_else(|| {
        let shapes: Vec<String> = all
            .iter()
            .map(|bs| bs.iter().map(|b| b.count_ones().to_string()).collect::<Vec<_>>().join("+"))
            .collect();
        Error::TheoryViolation(format!("vanishing sum splits only as {}", shapes.join(", ")))
    })
}

pub fn vanishing_subsum_decomposition(sys: &SixTermSystem) -> Result<PartitionType> {
    decompose_terms(sys.terms())
}

/// The positional multisets `S` and `S'` for exponent pairs `(m, n)` and
/// `(m', n')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSets {
    pub s: [FieldElement; 6],
    pub s_prime: [FieldElement; 6],
}

/// `(α^mβ^n, α^nβ^m, α^mγ^n, α^nγ^m, β^mγ^n, β^nγ^m)`.
fn unsigned_terms(a: &FieldElement, b: &FieldElement, c: &FieldElement, m: i64, n: i64) -> Result<[FieldElement; 6]> {
    let (am, an, bm, bn, cm, cn) = (a.pow(m)?, a.pow(n)?, b.pow(m)?, b.pow(n)?, c.pow(m)?, c.pow(n)?);
    Ok([&am * &bn, &an * &bm, &am * &cn, &an * &cm, &bm * &cn, &bn * &cm])
}

impl LemmaSets {
    pub fn new(
        alpha: &FieldElement,
        beta: &FieldElement,
        gamma: &FieldElement,
        (m, n): (i64, i64),
        (mp, np): (i64, i64),
    ) -> Result<Self> {
        check_nonzero([alpha, beta, gamma])?;
        Ok(LemmaSets { s: unsigned_terms(alpha, beta, gamma, m, n)?, s_prime: unsigned_terms(alpha, beta, gamma, mp, np)? })
    }
}

fn some_base_quotient_is_root_of_unity(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<bool> {
    Ok(quotient_is_root_of_unity(a, b)? || quotient_is_root_of_unity(a, c)? || quotient_is_root_of_unity(b, c)?)
}

/// The 15 perfect matchings of six positions.
pub fn pairings() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::with_capacity(15);
    for a in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&i| i != a).collect();
        for b in 1..4 {
            let last: Vec<usize> = rest[1..].iter().copied().filter(|&i| i != rest[b]).collect();
            out.push([(0, a), (rest[0], rest[b]), (last[0], last[1])]);
        }
    }
    out
}

/// Pairings of `S` into three pairs whose quotients are all roots of unity.
pub fn root_of_unity_pairings(s: &[FieldElement; 6]) -> Result<Vec<[(usize, usize); 3]>> {
    let mut rou = [[false; 6]; 6];
    for i in 0..6 {
        for j in i + 1..6 {
            rou[i][j] = quotient_is_root_of_unity(&s[i], &s[j])?;
        }
    }
    Ok(pairings().into_iter().filter(|p| p.iter().all(|&(i, j)| rou[i][j])).collect())
}

/// True unless `S` pairs off into root-of-unity quotients while no quotient
/// of `α, β, γ` is a root of unity.
pub fn pairing_check(alpha: &FieldElement, beta: &FieldElement, gamma: &FieldElement, m: i64, n: i64) -> Result<bool> {
    check_exponents(m, n)?;
    check_nonzero([alpha, beta, gamma])?;
    if some_base_quotient_is_root_of_unity(alpha, beta, gamma)? {
        return Ok(true);
    }
    let sets = LemmaSets::new(alpha, beta, gamma, (m, n), (m, n))?;
    Ok(root_of_unity_pairings(&sets.s)?.is_empty())
}

/// Masks `T` (bit `i` set when position `i` lies in `T`) such that `x/x'`
/// is constant on `T` and on its complement.
pub fn ratio_constant_splits(sets: &LemmaSets) -> Result<Vec<u8>> {
    let ratios = sets
        .s
        .iter()
        .zip(&sets.s_prime)
        .map(|(x, xp)| x.try_div(xp))
        .collect::<Result<Vec<_>>>()?;
    let constant_on = |mask: u8| {
        let idx = indices(mask);
        idx.windows(2).all(|w| ratios[w[0]] == ratios[w[1]])
    };
    Ok((0..64u8).filter(|&t| constant_on(t) && constant_on(FULL & !t)).collect())
}

/// True unless `S` splits into two parts with constant `x/x'` while no
/// quotient of `α, β, γ` is a root of unity.
pub fn ratio_split_check(
    alpha: &FieldElement,
    beta: &FieldElement,
    gamma: &FieldElement,
    (m, n): (i64, i64),
    (mp, np): (i64, i64),
) -> Result<bool> {
    check_exponents(m, n)?;
    check_exponents(mp, np)?;
    if (m, n) == (mp, np) {
        return Err(Error::Precondition("exponent pairs must differ".into()));
    }
    check_nonzero([alpha, beta, gamma])?;
    if some_base_quotient_is_root_of_unity(alpha, beta, gamma)? {
        return Ok(true);
    }
    let sets = LemmaSets::new(alpha, beta, gamma, (m, n), (mp, np))?;
    Ok(ratio_constant_splits(&sets)?.is_empty())
}

/// For three roots of `X^m + A X^n + B` of equal modulus, confirm that two of
/// `α^m, β^m, γ^m` coincide.
pub fn equal_modulus_trinomial_check(
    alpha: &FieldElement,
    beta: &FieldElement,
    gamma: &FieldElement,
    (m, n): (i64, i64),
    a: &FieldElement,
    b: &FieldElement,
) -> Result<bool> {
    if !(m > n && n > 0) {
        return Err(Error::Precondition(format!("need m > n > 0, got ({m}, {n})")));
    }
    if b.is_zero() {
        return Err(Error::Precondition("B must be nonzero".into()));
    }
    check_nonzero([alpha, beta, gamma])?;
    let els = [alpha, beta, gamma];
    let mut powers = Vec::with_capacity(3);
    for (i, x) in els.iter().enumerate() {
        let xm = x.pow(m)?;
        if !(&(&xm + &a.try_mul(&x.pow(n)?)?) + b).is_zero() {
            return Err(Error::Precondition(format!("element {i} is not a root of the trinomial")));
        }
        powers.push(xm);
    }
    for (x, y) in [(alpha, beta), (beta, gamma)] {
        if x.compare_modulus(y)? != Ordering::Equal {
            return Err(Error::Precondition("moduli are not all equal".into()));
        }
    }
    Ok(powers[0] == powers[1] || powers[0] == powers[2] || powers[1] == powers[2])
}
