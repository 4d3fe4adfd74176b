//! Regular differential operators on a polynomial ring in characteristic zero.
//!
//! An operator is stored in normal form `Σ_β f_β ∂^β`, polynomial
//! coefficients on the left. The zero operator has no terms and order
//! [`Degree::NegInfinity`]; every operation below accepts it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::error::AlgebraError;
use crate::poly::{Degree, Monomial, Poly, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Monomial, Poly>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn from_poly(f: Poly) -> Self {
        let nvars = f.nvars();
        Self::term(f, Monomial::one(nvars))
    }

    /// `∂_{i+1}` (`i` zero-based).
    pub fn partial(nvars: usize, i: usize) -> Self {
        Self::term(Poly::one(nvars), Monomial::var(nvars, i))
    }

    /// The single term `f ∂^β`.
    pub fn term(f: Poly, beta: Monomial) -> Self {
        assert_eq!(f.nvars(), beta.nvars(), "operator term arity");
        let mut terms = BTreeMap::new();
        let nvars = f.nvars();
        if !f.is_zero() {
            terms.insert(beta, f);
        }
        DiffOp { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Poly)>,
    {
        let mut u = DiffOp::zero(nvars);
        for (beta, f) in terms {
            u.add_term(beta, f);
        }
        u
    }

    fn add_term(&mut self, beta: Monomial, f: Poly) {
        if f.is_zero() {
            return;
        }
        assert_eq!(f.nvars(), self.nvars, "operator term arity");
        match self.terms.entry(beta) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(β, f_β)` pairs, ascending in `β` (graded lexicographic).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, beta: &Monomial) -> Poly {
        self.terms
            .get(beta)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// `max |β|` over the stored terms.
    pub fn order(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Order at most zero, i.e. multiplication by a polynomial (or zero).
    pub fn as_poly(&self) -> Option<Poly> {
        match self.order() {
            Degree::NegInfinity => Some(Poly::zero(self.nvars)),
            Degree::Finite(0) => Some(self.value_at_one()),
            _ => None,
        }
    }

    fn check_dim(&self, other: &DiffOp) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, f) in &other.terms {
            out.add_term(b.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, f) in &other.terms {
            out.add_term(b.clone(), -f);
        }
        Ok(out)
    }

    /// Normal-ordered product by the generalized Leibniz rule
    /// `∂^β g = Σ_{κ ≤ β} C(β, κ) ∂^κ(g) ∂^{β-κ}`.
    pub fn try_mul(&self, other: &DiffOp) -> Result<DiffOp, AlgebraError> {
        self.check_dim(other)?;
        let mut out = DiffOp::zero(self.nvars);
        for (beta, f) in &self.terms {
            let kappas = sub_multi_indices(beta.exponents());
            for (gamma, g) in &other.terms {
                for kappa in &kappas {
                    let dg = g.partial_pow(kappa);
                    if dg.is_zero() {
                        continue;
                    }
                    let c = multi_binomial(beta.exponents(), kappa);
                    let coeff = (f * &dg).scale(&Rational::from_integer(c));
                    let exps: Vec<u32> = beta
                        .exponents()
                        .iter()
                        .zip(kappa)
                        .zip(gamma.exponents())
                        .map(|((b, k), g)| b - k + g)
                        .collect();
                    out.add_term(Monomial::new(exps), coeff);
                }
            }
        }
        Ok(out)
    }

    /// `a · u` with `a ∈ S` acting on the left (coefficientwise).
    pub fn left_mul_poly(&self, a: &Poly) -> DiffOp {
        DiffOp::from_terms(
            self.nvars,
            self.terms.iter().map(|(b, f)| (b.clone(), a * f)),
        )
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::from_terms(
            self.nvars,
            self.terms.iter().map(|(b, f)| (b.clone(), f.scale(c))),
        )
    }

    pub fn pow(&self, e: u32) -> DiffOp {
        let mut acc = DiffOp::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `u(f) = Σ_β f_β ∂^β(f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(f.nvars(), self.nvars, "operator applied to polynomial of other arity");
        self.terms
            .iter()
            .fold(Poly::zero(self.nvars), |acc, (b, c)| {
                acc + c * &f.partial_pow(b.exponents())
            })
    }

    /// `u(1)`, the `β = 0` coefficient.
    pub fn value_at_one(&self) -> Poly {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// `Σ_{|β| = order} f_β ξ^β` in the ring `x1..xn, ξ1..ξn`.
    pub fn principal_symbol(&self) -> Result<SymbolPoly, AlgebraError> {
        let p = self.order().finite().ok_or(AlgebraError::ZeroOperator)?;
        let n = self.nvars;
        let mut terms = Vec::new();
        for (beta, f) in self.terms.iter().filter(|(b, _)| b.total_degree() == p) {
            for (m, c) in f.terms() {
                let mut e = m.exponents().to_vec();
                e.extend_from_slice(beta.exponents());
                terms.push((Monomial::new(e), c.clone()));
            }
        }
        Ok(SymbolPoly {
            nvars: n,
            xi_degree: p,
            poly: Poly::from_terms(2 * n, terms),
        })
    }

    /// Membership in the right ideal `f^t Diff(S)`: every normal-form
    /// coefficient must be divisible by `f^t`.
    pub fn in_right_ideal(&self, f: &Poly, t: u32) -> Result<bool, AlgebraError> {
        for c in self.terms.values() {
            if !f.power_divides(t, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First coefficient (in ascending `β`) that is not divisible by `f^t`.
    pub fn right_ideal_witness(&self, f: &Poly, t: u32) -> Result<Option<(Monomial, Poly)>, AlgebraError> {
        for (b, c) in &self.terms {
            if !f.power_divides(t, c)? {
                return Ok(Some((b.clone(), c.clone())));
            }
        }
        Ok(None)
    }
}

fn sub_multi_indices(beta: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(beta.len())];
    for &b in beta {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

fn multi_binomial(beta: &[u32], kappa: &[u32]) -> BigInt {
    beta.iter()
        .zip(kappa)
        .fold(BigInt::one(), |acc, (&b, &k)| acc * binomial(BigInt::from(b), BigInt::from(k)))
}

/// `[u, v] = uv - vu`.
pub fn commutator(u: &DiffOp, v: &DiffOp) -> DiffOp {
    &(u * v) - &(v * u)
}

/// `[u, f1, ..., fp] = [[u, f1, ..., f_{p-1}], fp]`; the empty list gives `u`.
pub fn iterated_commutator(u: &DiffOp, fs: &[Poly]) -> DiffOp {
    fs.iter().fold(u.clone(), |acc, f| {
        commutator(&acc, &DiffOp::from_poly(f.clone()))
    })
}

/// `[u, f1, ..., fp](1)` via the subset expansion
/// `Σ_{J ⊆ I} (-1)^{|J|} Π_{j∈J} f_j · u(Π_{k∉J} f_k)`; computed without
/// forming any commutator.
pub fn value_at_one_expansion(u: &DiffOp, fs: &[Poly]) -> Poly {
    let n = u.nvars();
    let p = fs.len();
    let mut acc = Poly::zero(n);
    for mask in 0u64..(1u64 << p) {
        let mut inside = Poly::one(n);
        let mut outside = Poly::one(n);
        for (k, f) in fs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                inside = &inside * f;
            } else {
                outside = &outside * f;
            }
        }
        let term = &inside * &u.apply(&outside);
        acc = if mask.count_ones() % 2 == 0 {
            acc + term
        } else {
            acc - term
        };
    }
    acc
}

/// A derivation `Σ_i c_i ∂_i` of the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self, AlgebraError> {
        let n = coeffs.len();
        if n == 0 {
            return Err(AlgebraError::SizeMismatch { expected: 1, found: 0 });
        }
        if let Some(bad) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(AlgebraError::DimensionMismatch {
                left: n,
                right: bad.nvars(),
            });
        }
        Ok(Derivation { coeffs })
    }

    /// Reads a derivation off an operator whose terms all have order exactly 1.
    pub fn from_diffop(u: &DiffOp) -> Option<Self> {
        let n = u.nvars();
        let mut coeffs = vec![Poly::zero(n); n];
        for (beta, f) in u.terms() {
            if beta.total_degree() != 1 {
                return None;
            }
            let i = beta.exponents().iter().position(|&e| e == 1)?;
            coeffs[i] = f.clone();
        }
        Some(Derivation { coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn to_diffop(&self) -> DiffOp {
        let n = self.nvars();
        DiffOp::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Poly::zero(self.nvars()), |acc, (i, c)| acc + c * &f.partial(i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `Some(d)` when every nonzero coefficient is homogeneous of degree `d`.
    /// The zero derivation yields `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.degree().finite()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

/// Principal symbol: a polynomial in `x1..xn, ξ1..ξn`, homogeneous of
/// degree `xi_degree` in the `ξ` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolPoly {
    nvars: usize,
    xi_degree: u32,
    poly: Poly,
}

impl SymbolPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn xi_degree(&self) -> u32 {
        self.xi_degree
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn mul(&self, other: &SymbolPoly) -> SymbolPoly {
        SymbolPoly {
            nvars: self.nvars,
            xi_degree: self.xi_degree + other.xi_degree,
            poly: &self.poly * &other.poly,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&DiffOp> for &DiffOp {
            type Output = DiffOp;
            fn $method(self, rhs: &DiffOp) -> DiffOp {
                self.$try(rhs).expect("operators over different rings")
            }
        }

        impl $trait<DiffOp> for DiffOp {
            type Output = DiffOp;
            fn $method(self, rhs: DiffOp) -> DiffOp {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&DiffOp> for DiffOp {
            type Output = DiffOp;
            fn $method(self, rhs: &DiffOp) -> DiffOp {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(b, f)| (b.clone(), -f)).collect(),
        }
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

impl From<Poly> for DiffOp {
    fn from(f: Poly) -> Self {
        DiffOp::from_poly(f)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_diffop(self, crate::parse::VarStyle::Indexed))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x1() -> Poly {
        Poly::var(1, 0)
    }
    fn d1() -> DiffOp {
        DiffOp::partial(1, 0)
    }
    fn p1(f: Poly) -> DiffOp {
        DiffOp::from_poly(f)
    }
    fn euler1() -> DiffOp {
        p1(x1()) * d1()
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(d1() * p1(x1()), euler1() + DiffOp::one(1));
        assert_eq!(commutator(&d1(), &p1(x1())), DiffOp::one(1));
    }

    #[test]
    fn euler_squared() {
        // (x∂)(x∂) = x²∂² + x∂
        let sq = euler1() * euler1();
        let expected = p1(x1().pow(2)) * d1().pow(2) + euler1();
        assert_eq!(sq, expected);
        assert_eq!(sq.order(), Degree::Finite(2));
    }

    #[test]
    fn unit_and_zero() {
        let u = euler1() + p1(x1().pow(3));
        assert_eq!(&u * &DiffOp::one(1), u);
        assert_eq!(&DiffOp::one(1) * &u, u);
        assert!((&u * &DiffOp::zero(1)).is_zero());
        assert_eq!(DiffOp::zero(1).order(), Degree::NegInfinity);
    }

    #[test]
    fn iterated_commutators() {
        assert_eq!(iterated_commutator(&d1().pow(2), &[x1(), x1()]), DiffOp::from_poly(Poly::constant(1, rat(2))));
        let xdxd = euler1() * euler1();
        assert_eq!(
            iterated_commutator(&xdxd, &[x1(), x1()]),
            p1(x1().pow(2).scale(&rat(2)))
        );
        assert_eq!(iterated_commutator(&xdxd, &[]), xdxd);
    }

    #[test]
    fn application() {
        assert_eq!(euler1().apply(&x1().pow(3)), x1().pow(3).scale(&rat(3)));
        let u = euler1() + p1(x1().scale(&rat(5)));
        assert_eq!(u.value_at_one(), x1().scale(&rat(5)));
        let d12 = DiffOp::partial(2, 0) * DiffOp::partial(2, 1);
        assert_eq!(d12.apply(&(Poly::var(2, 0) * Poly::var(2, 1))), Poly::one(2));
    }

    #[test]
    fn order_and_symbol() {
        let u = p1(x1().pow(2)) * d1().pow(2) - euler1();
        assert_eq!(u.order(), Degree::Finite(2));
        let s = u.principal_symbol().unwrap();
        // x²ξ² in variables (x, ξ)
        assert_eq!(s.as_poly(), &Poly::monomial(2, Monomial::new(vec![2, 2]), rat(1)));
        assert_eq!(s.xi_degree(), 2);

        let f = x1().pow(2) + Poly::one(1);
        let fo = p1(f.clone());
        assert_eq!(fo.order(), Degree::Finite(0));
        assert_eq!(fo.principal_symbol().unwrap().as_poly(), &f.extend_vars(2));
        assert_eq!(DiffOp::zero(1).principal_symbol(), Err(AlgebraError::ZeroOperator));
    }

    #[test]
    fn right_ideal_membership() {
        let u = p1(x1().pow(2)) * d1().pow(2) + p1(x1().pow(3));
        assert!(u.in_right_ideal(&x1(), 2).unwrap());
        assert!(!(euler1() + DiffOp::one(1)).in_right_ideal(&x1(), 1).unwrap());
        assert!((euler1() * euler1()).in_right_ideal(&x1(), 1).unwrap());
    }

    #[test]
    fn subset_expansion() {
        assert_eq!(value_at_one_expansion(&d1(), &[x1()]), Poly::one(1));
        assert_eq!(
            value_at_one_expansion(&d1().pow(2), &[x1(), x1()]),
            Poly::constant(1, rat(2))
        );
        let u = euler1() + p1(x1().scale(&rat(7)));
        assert_eq!(value_at_one_expansion(&u, &[]), u.value_at_one());
    }

    #[test]
    fn derivation_round_trip() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let d = Derivation::new(vec![x.pow(2), -y.pow(2)]).unwrap();
        let op = d.to_diffop();
        assert_eq!(Derivation::from_diffop(&op).unwrap(), d);
        assert_eq!(op.apply(&(&x + &y)), d.apply(&(&x + &y)));
        assert_eq!(d.homogeneous_degree(), Some(2));
        assert!(Derivation::from_diffop(&DiffOp::one(2)).is_none());
        let mixed = Derivation::new(vec![x.clone(), y.pow(2)]).unwrap();
        assert_eq!(mixed.homogeneous_degree(), None);
    }

    #[test]
    fn mismatched_dimensions() {
        assert!(DiffOp::one(1).try_mul(&DiffOp::one(2)).is_err());
        assert!(Derivation::new(vec![Poly::var(3, 0)]).is_err());
    }
}
