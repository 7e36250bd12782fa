#![allow(dead_code)]

use nilvec_core::{ExpMonomial, ExpPoly, Rational, VariableContext, VectorField};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn coefficient() -> impl Strategy<Value = Rational> + Clone {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn monomial(max_pow: u32, with_exp: bool) -> impl Strategy<Value = ExpMonomial> + Clone {
    let rates = if with_exp { -1i64..=1 } else { 0i64..=0 };
    (
        prop::array::uniform3(0..=max_pow),
        prop::array::uniform3(rates),
    )
        .prop_map(|(p, e)| ExpMonomial::new(p, e.map(|r| rat(r, 1))))
}

pub fn poly_with(max_terms: usize, max_pow: u32, with_exp: bool) -> impl Strategy<Value = ExpPoly> + Clone {
    prop::collection::vec((monomial(max_pow, with_exp), coefficient()), 0..=max_terms)
        .prop_map(|terms| ExpPoly::from_terms(terms))
}

/// Small polynomials with optional exponential factors.
pub fn poly() -> impl Strategy<Value = ExpPoly> {
    poly_with(4, 3, true)
}

pub fn polynomial() -> impl Strategy<Value = ExpPoly> {
    poly_with(4, 3, false)
}

pub fn field_with(p: impl Strategy<Value = ExpPoly> + Clone) -> impl Strategy<Value = VectorField> {
    (p.clone(), p.clone(), p).prop_map(|(a, b, c)| VectorField::new(&VariableContext::xyz(), vec![a, b, c]).unwrap())
}

pub fn field() -> impl Strategy<Value = VectorField> {
    field_with(poly_with(3, 2, true))
}

pub fn polynomial_field() -> impl Strategy<Value = VectorField> {
    field_with(poly_with(3, 2, false))
}

/// Polynomials in the variables listed in `vars` only.
pub fn poly_in(vars: &'static [usize], max_terms: usize, max_pow: u32) -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_pow, vars.len()), coefficient()), 0..=max_terms).prop_map(
        move |terms| {
            ExpPoly::from_terms(terms.into_iter().map(|(pows, c)| {
                let mut p = [0u32; 3];
                for (v, e) in vars.iter().zip(pows) {
                    p[*v] = e;
                }
                (ExpMonomial::new(p, Default::default()), c)
            }))
        },
    )
}
