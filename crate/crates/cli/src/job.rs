//! JSON job files: schema, exact parsing and canonical serialization.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use trinomial_sieve::arith::{format_rational, parse_rational, ComplexRectangle, IntPolynomial, RationalInterval};
use trinomial_sieve::heights::OmegaSet;
use trinomial_sieve::numberfield::{FieldElement, NumberField};

use crate::CliError;

/// A rational written as `"p/q"` or an integer (string or JSON integer).
/// Always serialized as a reduced string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalText(pub BigRational);

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalText;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalText, E> {
                parse_rational(v).map(RationalText).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalText, E> {
                Ok(RationalText(BigRational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalText, E> {
                Ok(RationalText(BigRational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RationalText, E> {
                Err(E::custom(format!("floating-point number {v} not allowed; write rationals as strings")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSpec {
    pub re: [RationalText; 2],
    pub im: [RationalText; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Integer coefficients, constant term first.
    pub poly: Vec<i64>,
    pub root: RootSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classify,
    Bounds,
    Search,
    Diagnose,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emit_binomials: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parallel_width: Option<usize>,
}

/// Direct bound evaluation without an `Ω`. With `nu` the single-element
/// form is used and `h` is `h(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    pub d: u64,
    pub h: RationalText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_tilde: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u64>,
}

/// Exponents for the lemma checks on the first three elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnoseSpec {
    pub m: i64,
    pub n: i64,
    pub m_prime: i64,
    pub n_prime: i64,
}

impl Default for DiagnoseSpec {
    fn default() -> Self {
        DiagnoseSpec { m: 2, n: 1, m_prime: 3, n_prime: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HitSpec {
    pub m: u64,
    pub n: u64,
    pub a: Vec<RationalText>,
    pub b: Vec<RationalText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<RationalText>>>,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnose: Option<DiagnoseSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hits: Option<Vec<HitSpec>>,
}

fn interval(pair: &[RationalText; 2], what: &str) -> Result<RationalInterval, CliError> {
    RationalInterval::new(pair[0].0.clone(), pair[1].0.clone())
        .map_err(|_| CliError::Schema(format!("{what}: lower end exceeds upper end")))
}

impl JobSpec {
    pub fn field(&self) -> Result<NumberField, CliError> {
        let spec = self.field.as_ref().ok_or_else(|| CliError::Schema("missing key \"field\"".into()))?;
        let rect = ComplexRectangle::new(interval(&spec.root.re, "root.re")?, interval(&spec.root.im, "root.im")?);
        Ok(NumberField::new(IntPolynomial::from_i64(&spec.poly), rect)?)
    }

    fn element(field: &NumberField, coords: &[RationalText]) -> Result<FieldElement, CliError> {
        Ok(field.element(coords.iter().map(|c| c.0.clone()).collect())?)
    }

    pub fn omega(&self) -> Result<OmegaSet, CliError> {
        let field = self.field()?;
        let els = self.elements.as_ref().ok_or_else(|| CliError::Schema("missing key \"elements\"".into()))?;
        let els = els.iter().map(|c| Self::element(&field, c)).collect::<Result<Vec<_>, _>>()?;
        Ok(OmegaSet::new(&field, els)?)
    }

    pub fn hit_elements(&self, field: &NumberField, hit: &HitSpec) -> Result<(FieldElement, FieldElement), CliError> {
        Ok((Self::element(field, &hit.a)?, Self::element(field, &hit.b)?))
    }

    /// A job describing `omega` in its own field.
    pub fn from_omega(omega: &OmegaSet, mode: Mode) -> Result<Self, CliError> {
        let field = omega.field();
        let poly = field
            .poly()
            .coeffs()
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| CliError::Schema("coefficient exceeds 64 bits".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let r = field.embedding();
        let pair = |i: &RationalInterval| [RationalText(i.lo().clone()), RationalText(i.hi().clone())];
        Ok(JobSpec {
            field: Some(FieldSpec { poly, root: RootSpec { re: pair(r.re()), im: pair(r.im()) } }),
            elements: Some(
                omega.elements().iter().map(|e| e.coords().iter().cloned().map(RationalText).collect()).collect(),
            ),
            mode,
            search: None,
            eps: None,
            bounds: None,
            diagnose: None,
            hits: None,
        })
    }

    /// Canonical JSON: reduced rational strings, absent optional keys
    /// omitted, fixed key order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job serializes")
    }
}

/// Parse and validate a job. Field and elements, when present, must
/// describe an isolated root and nonzero elements.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    let spec: JobSpec = serde_json::from_str(text)?;
    match (&spec.field, &spec.elements) {
        (Some(_), Some(_)) => {
            spec.omega()?;
        }
        (Some(_), None) => {
            spec.field()?;
        }
        (None, Some(_)) => return Err(CliError::Schema("\"elements\" given without \"field\"".into())),
        (None, None) => {
            if !(spec.mode == Mode::Bounds && spec.bounds.is_some()) {
                return Err(CliError::Schema("missing keys \"field\" and \"elements\"".into()));
            }
        }
    }
    if let Some(eps) = &spec.eps {
        if eps.0 <= BigRational::from_integer(0.into()) {
            return Err(CliError::Schema("eps must be positive".into()));
        }
    }
    Ok(spec)
}
