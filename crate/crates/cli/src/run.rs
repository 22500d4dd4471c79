//! Mode dispatch and JSON rendering of results.

use num_rational::BigRational;
use serde_json::{json, Value};

use trinomial_sieve::arith::format_rational;
use trinomial_sieve::bounds::{bound_chain, corollary_bounds, BoundReport, CorollaryInput};
use trinomial_sieve::heights::{omega_heights, HeightValue, OmegaSet};
use trinomial_sieve::lemma::{
    build_six_terms, pairing_check, ratio_split_check, ratio_constant_splits, root_of_unity_pairings,
    vanishing_subsum_decomposition, LemmaSets, PartitionType,
};
use trinomial_sieve::numberfield::FieldElement;
use trinomial_sieve::search::{
    classify_and_bound, default_eps, family_witness, run_search, verify_trinomial, CertifiedTrinomial, Classification,
    Completeness, FamilyWitness, SearchRequest, VanishingCertificate, DEFAULT_MAX_DEGREE,
};
use trinomial_sieve::unity::EquivalenceClassification;

use crate::job::{JobSpec, Mode};
use crate::CliError;

/// Command-line overrides applied on top of the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_degree: Option<u64>,
    pub jobs: Option<usize>,
    pub eps: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobOutput {
    pub json: Value,
    /// False when a verify job found a record that does not check out.
    pub success: bool,
}

fn coords(e: &FieldElement) -> Value {
    Value::from(e.coords().iter().map(format_rational).collect::<Vec<_>>())
}

fn decimal(h: &HeightValue) -> Value {
    let d = h.render();
    json!({ "value": d.value, "error": d.error })
}

fn opt_decimal(h: &Option<HeightValue>) -> Value {
    h.as_ref().map(decimal).unwrap_or(Value::Null)
}

fn classes_json(c: &EquivalenceClassification) -> Value {
    json!({ "class_count": c.class_count(), "classes": c.classes() })
}

fn witness_json(w: &FamilyWitness) -> Value {
    let (m, n, a, b) = &w.sample;
    json!({
        "k": w.k,
        "g": w.g.iter().map(coords).collect::<Vec<_>>(),
        "sample": { "m": m, "n": n, "a": coords(a), "b": coords(b) },
    })
}

fn report_json(r: &BoundReport) -> Value {
    json!({
        "d": r.d,
        "h_omega": decimal(&r.h_omega),
        "h_tilde": opt_decimal(&r.h_tilde),
        "log_n_max": opt_decimal(&r.log_n_max),
        "log_mn_max": opt_decimal(&r.log_mn_max),
        "log_degree_max_chain": opt_decimal(&r.log_degree_max_chain),
        "log_degree_max_theorem": decimal(&r.log_degree_max_theorem),
        "log_height_max_chain": opt_decimal(&r.log_height_max_chain),
        "log_height_max_theorem": decimal(&r.log_height_max_theorem),
        "log_degree_max": decimal(&r.log_degree_max()),
        "log_height_max": decimal(&r.log_height_max()),
    })
}

fn partition_json(p: &PartitionType) -> Value {
    json!({ "signature": p.signature.to_string(), "v": p.v, "w": p.w })
}

fn hit_json(h: &CertifiedTrinomial) -> Value {
    json!({
        "m": h.m,
        "n": h.n,
        "a": coords(&h.a),
        "b": coords(&h.b),
        "binomial": h.is_binomial(),
        "height": decimal(&h.height),
        "vanishing": h.certificates.iter().map(|c| c.residual.is_zero()).collect::<Vec<_>>(),
        "subsum": h.subsum_type.as_ref().map(partition_json),
    })
}

fn eps_of(spec: &JobSpec, o: &Overrides) -> BigRational {
    o.eps.clone().or_else(|| spec.eps.as_ref().map(|e| e.0.clone())).unwrap_or_else(default_eps)
}

fn classify(omega: &OmegaSet, eps: &BigRational) -> Result<Value, CliError> {
    let (classes, report) = classify_and_bound(omega, eps)?;
    let (h, ht) = omega_heights(omega, eps)?;
    let mut out = json!({
        "mode": "classify",
        "classification": classes_json(&classes),
        "heights": { "h_omega": decimal(&h), "h_tilde": decimal(&ht) },
        "bound_report": report.as_ref().map(report_json),
    });
    if classes.class_count() <= 2 {
        out["family"] = "infinite".into();
        out["witness"] = witness_json(&family_witness(omega, &classes)?);
    } else {
        out["family"] = "finite".into();
    }
    Ok(out)
}

fn bounds(spec: &JobSpec, eps: &BigRational) -> Result<Value, CliError> {
    if let Some(b) = &spec.bounds {
        let h = HeightValue::new(trinomial_sieve::arith::RationalInterval::point(b.h.0.clone()));
        let report = match b.nu {
            Some(nu) => corollary_bounds(&CorollaryInput { d: b.d, nu, h_alpha: h })?,
            None => {
                let ht = match &b.h_tilde {
                    Some(t) => HeightValue::new(trinomial_sieve::arith::RationalInterval::point(t.0.clone())),
                    None => HeightValue::new(h.enclosure().scale(&BigRational::from_integer(2.into()))),
                };
                bound_chain(b.d, &ht, &h)?
            }
        };
        return Ok(json!({ "mode": "bounds", "bound_report": report_json(&report) }));
    }
    let omega = spec.omega()?;
    let (classes, _) = classify_and_bound(&omega, eps)?;
    let (h, ht) = omega_heights(&omega, eps)?;
    let report = bound_chain(omega.field().degree() as u64, &ht, &h)?;
    Ok(json!({
        "mode": "bounds",
        "classification": classes_json(&classes),
        "applicable": classes.class_count() >= 3,
        "bound_report": report_json(&report),
    }))
}

fn search(spec: &JobSpec, o: &Overrides, eps: BigRational) -> Result<Value, CliError> {
    let omega = spec.omega()?;
    let s = spec.search.clone().unwrap_or(crate::job::SearchSpec { max_degree: None, emit_binomials: None, parallel_width: None });
    let max_degree = o.max_degree.or(s.max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
    let width = o
        .jobs
        .or(s.parallel_width)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let req = SearchRequest::new(omega, max_degree)?
        .with_parallel_width(width)
        .with_binomials(s.emit_binomials.unwrap_or(true))
        .with_eps(eps);
    let out = run_search(&req)?;
    let (family, witness) = match &out.classification {
        Classification::InfiniteFamily { witness, .. } => ("infinite", witness_json(witness)),
        Classification::FiniteSearch { .. } => ("finite", Value::Null),
    };
    let completeness = match out.completeness {
        Completeness::Skipped => json!({ "skipped": "infinite family" }),
        Completeness::CompleteUpToCap(cap) => json!({ "up_to": cap }),
        Completeness::TheoremComplete => json!({ "theorem": true }),
    };
    Ok(json!({
        "mode": "search",
        "classification": classes_json(&out.classes),
        "family": family,
        "witness": witness,
        "bound_report": out.bound_report.as_ref().map(report_json),
        "max_degree": max_degree,
        "hits": out.hits.iter().map(hit_json).collect::<Vec<_>>(),
        "completeness": completeness,
    }))
}

fn diagnose(spec: &JobSpec) -> Result<Value, CliError> {
    let omega = spec.omega()?;
    let els = omega.elements();
    if els.len() < 3 {
        return Err(CliError::Schema("diagnose needs at least three elements".into()));
    }
    let (a, b, c) = (&els[0], &els[1], &els[2]);
    let d = spec.diagnose.clone().unwrap_or_default();
    let sys = build_six_terms(a, b, c, d.m, d.n)?;
    let sum = sys.sum();
    let decomposition = if sum.is_zero() { Some(partition_json(&vanishing_subsum_decomposition(&sys)?)) } else { None };
    let sets = LemmaSets::new(a, b, c, (d.m, d.n), (d.m_prime, d.n_prime))?;
    let pairings = root_of_unity_pairings(&sets.s)?;
    let splits = ratio_constant_splits(&sets)?;
    let split_json: Vec<Value> = splits
        .iter()
        .map(|&t| json!({ "t": (0..6).filter(|i| t >> i & 1 == 1).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({
        "mode": "diagnose",
        "exponents": { "m": d.m, "n": d.n, "m_prime": d.m_prime, "n_prime": d.n_prime },
        "six_terms": {
            "terms": sys.terms().iter().map(coords).collect::<Vec<_>>(),
            "sum": coords(&sum),
            "decomposition": decomposition,
        },
        "item1": { "holds": pairing_check(a, b, c, d.m, d.n)?, "unit_pairings": pairings.len() },
        "item2": {
            "holds": ratio_split_check(a, b, c, (d.m, d.n), (d.m_prime, d.n_prime))?,
            "ratio_constant_splits": split_json,
        },
    }))
}

fn verify(spec: &JobSpec, eps: &BigRational) -> Result<JobOutput, CliError> {
    let omega = spec.omega()?;
    let hits = spec.hits.as_ref().ok_or_else(|| CliError::Schema("verify needs \"hits\"".into()))?;
    let mut results = Vec::with_capacity(hits.len());
    let mut all = true;
    for h in hits {
        let (a, b) = spec.hit_elements(omega.field(), h)?;
        let certificates =
            (0..omega.len()).map(|index| VanishingCertificate { index, residual: omega.field().zero() }).collect();
        let height = if b.is_zero() {
            HeightValue::zero()
        } else {
            trinomial_sieve::heights::height_of_projective_point(&[omega.field().one(), a.clone(), b.clone()], eps)?
        };
        let t = CertifiedTrinomial { m: h.m, n: h.n, a, b, height, certificates, subsum_type: None };
        let ok = verify_trinomial(&omega, &t);
        all &= ok;
        results.push(json!({ "m": h.m, "n": h.n, "verified": ok }));
    }
    Ok(JobOutput { json: json!({ "mode": "verify", "results": results, "all_verified": all }), success: all })
}

/// Execute a parsed job.
pub fn run_job(spec: &JobSpec, o: &Overrides) -> Result<JobOutput, CliError> {
    let eps = eps_of(spec, o);
    let json = match spec.mode {
        Mode::Classify => classify(&spec.omega()?, &eps)?,
        Mode::Bounds => bounds(spec, &eps)?,
        Mode::Search => search(spec, o, eps)?,
        Mode::Diagnose => diagnose(spec)?,
        Mode::Verify => return verify(spec, &eps),
    };
    Ok(JobOutput { json, success: true })
}
