//! Seeded random instances for randomized checks.

use num_traits::Zero;
use rand::Rng;

use crate::linalg::{determinant, RingMatrix};
use crate::poly::{rat, Monomial, Poly, Rational};
use crate::tangent::{DeltaRepr, DeltaWord};
use crate::weyl::{Derivation, DiffOp};

/// Coefficient bounds and term counts for random polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Integer coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape {
            max_degree: 2,
            max_terms: 3,
            coeff_bound: 3,
        }
    }
}

/// Uniform total degree, then each unit of degree goes to a random variable.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    if nvars > 0 {
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..nvars)] += 1;
        }
    }
    Monomial::new(exps)
}

/// Monomial of total degree exactly `degree`.
pub fn random_monomial_of_degree<R: Rng + ?Sized>(rng: &mut R, nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(exps)
}

fn random_coeff<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// May be zero.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: PolyShape) -> Poly {
    let n = rng.gen_range(0..=shape.max_terms);
    Poly::from_terms(
        nvars,
        (0..n).map(|_| {
            (
                random_monomial(rng, nvars, shape.max_degree),
                random_coeff(rng, shape.coeff_bound),
            )
        }),
    )
}

pub fn random_nonzero_poly<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: PolyShape) -> Poly {
    loop {
        let f = random_poly(rng, nvars, shape);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Homogeneous of the given degree; may be zero.
pub fn random_homogeneous_poly<R: Rng + ?Sized>(rng: &mut R, nvars: usize, degree: u32, shape: PolyShape) -> Poly {
    let n = rng.gen_range(0..=shape.max_terms);
    Poly::from_terms(
        nvars,
        (0..n).map(|_| {
            (
                random_monomial_of_degree(rng, nvars, degree),
                random_coeff(rng, shape.coeff_bound),
            )
        }),
    )
}

/// Square integer matrix with entries in `lo..=hi`.
pub fn random_int_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: i64, hi: i64) -> RingMatrix<Rational> {
    let data = (0..n * n).map(|_| rat(rng.gen_range(lo..=hi))).collect();
    RingMatrix::new(n, n, data).expect("positive size")
}

/// Invertible integer matrix with small entries, as rows.
pub fn random_invertible_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    loop {
        let m = random_int_matrix(rng, n, -2, 2);
        if !determinant(&m).expect("square").is_zero() {
            return (0..n).map(|i| m.row(i).to_vec()).collect();
        }
    }
}

pub fn random_derivation<R: Rng + ?Sized>(rng: &mut R, nvars: usize, shape: PolyShape) -> Derivation {
    Derivation::new((0..nvars).map(|_| random_poly(rng, nvars, shape)).collect()).expect("arity matches")
}

/// Random normal-form operator of order at most `max_order`.
pub fn random_diffop<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_order: u32, shape: PolyShape) -> DiffOp {
    let n = rng.gen_range(1..=shape.max_terms.max(1));
    DiffOp::from_terms(
        nvars,
        (0..n).map(|_| (random_monomial(rng, nvars, max_order), random_poly(rng, nvars, shape))),
    )
}

/// Like [`random_diffop`] but with a nonzero term of order exactly `order`.
pub fn random_diffop_of_order<R: Rng + ?Sized>(rng: &mut R, nvars: usize, order: u32, shape: PolyShape) -> DiffOp {
    let top = DiffOp::term(
        random_nonzero_poly(rng, nvars, shape),
        random_monomial_of_degree(rng, nvars, order),
    );
    if order == 0 {
        return top;
    }
    top + random_diffop(rng, nvars, order - 1, shape)
}

/// Random weakly increasing word of 1-based indices into `ngens` generators.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, ngens: usize, len: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=ngens)).collect();
    w.sort_unstable();
    w
}

/// A random combination of words of length `≤ max_len` in the generators,
/// returned together with its normal form.
pub fn random_word_combination<R: Rng + ?Sized>(
    rng: &mut R,
    generators: &[DiffOp],
    max_len: usize,
    nwords: usize,
    shape: PolyShape,
) -> (DeltaRepr, DiffOp) {
    let nvars = generators[0].nvars();
    let words = (0..nwords)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            DeltaWord {
                coeff: random_poly(rng, nvars, shape),
                word: random_word(rng, generators.len(), len),
            }
        })
        .collect();
    let repr = DeltaRepr::new(words, generators.to_vec());
    let op = repr.reassemble();
    (repr, op)
}
