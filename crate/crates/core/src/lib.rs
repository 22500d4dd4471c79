//! Exact search for the trinomials `X^m + A X^n + B` that vanish on a finite
//! set of algebraic numbers, with certified degree and height bounds.

pub mod arith;
pub mod error;
pub mod roots;
pub mod numberfield;
pub mod heights;
pub mod unity;
pub mod bounds;
pub mod lemma;
pub mod search;
pub mod presets;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/number-fields.md")]
    pub mod number_fields {}
    #[doc = include_str!("../../../book/src/heights.md")]
    pub mod heights {}
    #[doc = include_str!("../../../book/src/roots-of-unity.md")]
    pub mod roots_of_unity {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/six-terms.md")]
    pub mod six_terms {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
