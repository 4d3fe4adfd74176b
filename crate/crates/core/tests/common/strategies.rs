//! proptest strategies for the algebraic types.

use logdiff::poly::rat;
use logdiff::{DiffOp, Monomial, Poly, Rational};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Exponent vector with total degree at most `max_deg`.
pub fn monomial(n: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_deg, n).prop_map(move |mut e| {
        // trim from the back until the total degree fits
        let mut i = e.len();
        while e.iter().sum::<u32>() > max_deg {
            i = if i == 0 { e.len() - 1 } else { i - 1 };
            e[i] = e[i].saturating_sub(1);
        }
        Monomial::new(e)
    })
}

pub fn poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(n, max_deg), -5i64..=5), 0..=max_terms)
        .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(m, c)| (m, rat(c)))))
}

pub fn nonzero_poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly(n, max_deg, max_terms).prop_filter("nonzero", |f| !f.is_zero())
}

/// Polynomial with rational (not just integer) coefficients.
pub fn rational_poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(n, max_deg), rational()), 0..=max_terms)
        .prop_map(move |ts| Poly::from_terms(n, ts))
}

pub fn diffop(n: usize, max_order: u32, coeff_deg: u32, max_terms: usize) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((monomial(n, max_order), poly(n, coeff_deg, 2)), 0..=max_terms)
        .prop_map(move |ts| DiffOp::from_terms(n, ts))
}

pub fn rational_diffop(n: usize, max_order: u32, coeff_deg: u32, max_terms: usize) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((monomial(n, max_order), rational_poly(n, coeff_deg, 2)), 0..=max_terms)
        .prop_map(move |ts| DiffOp::from_terms(n, ts))
}

pub fn int_matrix(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-bound..=bound).prop_map(rat), n), n)
}

pub fn rational_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
}
