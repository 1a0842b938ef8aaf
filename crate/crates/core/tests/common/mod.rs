//! Random polynomial strategies shared by the property tests.
#![allow(dead_code)]

use lpa_core::poly::{LaurentPolynomial, Monomial, Var};
use proptest::prelude::*;

pub const VARS: [Var; 5] = [
    Var::constant(1),
    Var::constant(2),
    Var::cluster(1),
    Var::cluster(2),
    Var::cluster(3),
];

fn monomial(min_cluster_exp: i32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((0..VARS.len(), min_cluster_exp..=3i32), 0..4).prop_map(|pairs| {
        Monomial::from_pairs(pairs.into_iter().map(|(i, e)| {
            let v = VARS[i];
            (v, if v.is_constant() { e.abs() } else { e })
        }))
    })
}

fn poly_with(min_cluster_exp: i32, max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    proptest::collection::vec((monomial(min_cluster_exp), -5i64..=5), 0..=max_terms).prop_map(
        |terms| {
            terms
                .into_iter()
                .map(|(m, c)| LaurentPolynomial::term(m, c))
                .sum()
        },
    )
}

/// Polynomials in `A1, A2, X1, X2, X3` with small coefficients.
pub fn poly() -> impl Strategy<Value = LaurentPolynomial> {
    poly_with(0, 4)
}

/// Laurent polynomials: cluster exponents down to -2.
pub fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    poly_with(-2, 4)
}

pub fn nonzero_poly() -> impl Strategy<Value = LaurentPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn nonconstant_poly() -> impl Strategy<Value = LaurentPolynomial> {
    poly_with(0, 3).prop_filter("nonconstant", |p| !p.is_constant())
}
