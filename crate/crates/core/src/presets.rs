//! Built-in example sets.

use crate::arith::{int, rat, BigRational, ComplexRectangle, RationalInterval};
use crate::error::{Error, Result};
use crate::heights::OmegaSet;
use crate::numberfield::{field_from_i64, NumberField};

pub const PRESET_NAMES: [&str; 4] = ["x3-x2+1", "cube-roots", "golden", "sqrt2-triple"];

fn rect(re: (BigRational, BigRational), im: (BigRational, BigRational)) -> ComplexRectangle {
    ComplexRectangle::new(
        RationalInterval::new(re.0, re.1).expect("ordered"),
        RationalInterval::new(im.0, im.1).expect("ordered"),
    )
}

fn coords(field: &NumberField, xs: &[(i64, i64)]) -> Result<crate::numberfield::FieldElement> {
    field.element(xs.iter().map(|&(p, q)| rat(p, q)).collect())
}

/// The splitting field of `x^3 - x^2 + 1`, generated by a root `θ` of
/// `t^6 - 2t^4 + t^2 + 23` near `-1.632 + 0.745i`.
pub fn cubic_splitting_field() -> Result<NumberField> {
    field_from_i64(&[23, 0, 1, 0, -2, 0, 1], rect((rat(-17, 10), rat(-8, 5)), (rat(7, 10), rat(4, 5))))
}

/// The three roots of `x^3 - x^2 + 1` inside [`cubic_splitting_field`].
pub fn cubic_roots() -> Result<OmegaSet> {
    let k = cubic_splitting_field()?;
    let roots = vec![
        coords(&k, &[(9, 25), (-1, 2), (-1, 10), (0, 1), (3, 50), (0, 1)])?,
        coords(&k, &[(9, 25), (1, 2), (-1, 10), (0, 1), (3, 50), (0, 1)])?,
        coords(&k, &[(7, 25), (0, 1), (1, 5), (0, 1), (-3, 25), (0, 1)])?,
    ];
    OmegaSet::new(&k, roots)
}

/// `Q(ω)` with `ω = e^{2πi/3}`.
pub fn cyclotomic3_field() -> Result<NumberField> {
    field_from_i64(&[1, 1, 1], rect((int(-1), int(0)), (int(0), int(1))))
}

/// `{ω, ω²}`: a single class.
pub fn cube_roots() -> Result<OmegaSet> {
    let k = cyclotomic3_field()?;
    let w = k.generator();
    let w2 = &w * &w;
    OmegaSet::new(&k, vec![w, w2])
}

/// `{φ, 1 - φ}` in `Q(φ)`: two classes.
pub fn golden() -> Result<OmegaSet> {
    let k = field_from_i64(&[-1, -1, 1], rect((int(1), int(2)), (int(0), int(0))))?;
    let phi = k.generator();
    let psi = &k.one() - &phi;
    OmegaSet::new(&k, vec![phi, psi])
}

/// `{2, 3, √2}` in `Q(√2)`: three classes.
pub fn sqrt2_triple() -> Result<OmegaSet> {
    let k = field_from_i64(&[-2, 0, 1], rect((int(1), int(2)), (int(0), int(0))))?;
    let s = k.generator();
    OmegaSet::new(&k, vec![k.from_int(2), k.from_int(3), s])
}

pub fn preset(name: &str) -> Result<OmegaSet> {
    match name {
        "x3-x2+1" => cubic_roots(),
        "cube-roots" => cube_roots(),
        "golden" => golden(),
        "sqrt2-triple" => sqrt2_triple(),
        _ => Err(Error::InvalidInput(format!("unknown preset {name:?}; known: {}", PRESET_NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPolynomial;

    #[test]
    fn cubic_roots_are_roots() {
        let omega = cubic_roots().unwrap();
        let g = IntPolynomial::from_i64(&[1, 0, -1, 1]);
        for (i, w) in omega.elements().iter().enumerate() {
            assert!(w.eval_poly(&g).is_zero());
            for v in &omega.elements()[i + 1..] {
                assert_ne!(w, v);
            }
        }
    }

    #[test]
    fn all_presets_load() {
        for name in PRESET_NAMES {
            assert!(preset(name).is_ok(), "{name}");
        }
        assert!(preset("nope").is_err());
    }
}
