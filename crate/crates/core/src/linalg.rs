//! Dense matrices over exact commutative rings, determinants, permanents and
//! the symmetric-power matrix `M^(p)` indexed by weakly increasing tuples.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::AlgebraError;
use crate::poly::{Poly, Rational};

/// Arithmetic needed by the matrix kernels. Elements carry their own ring
/// context (a [`Poly`] knows its variable count), hence the `*_like` constructors.
pub trait RingElem: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: &BigInt) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Exact quotient, `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;

    fn pow_elem(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl RingElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

impl RingElem for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars())
    }
    fn int_like(&self, n: &BigInt) -> Self {
        Poly::constant(self.nvars(), Rational::from_integer(n.clone()))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.exact_divide(other).ok()
    }
    fn pow_elem(&self, e: u32) -> Self {
        self.pow(e)
    }
}

/// Row-major dense matrix with at least one row and one column.
#[derive(Clone, PartialEq)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: RingElem> RingMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::SizeMismatch {
                expected: 1,
                found: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(AlgebraError::SizeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(RingMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(AlgebraError::SizeMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Result<Self, AlgebraError> {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::new(rows, cols, data)
    }

    /// Identity matrix whose entries live in the ring of `sample`.
    pub fn identity_like(n: usize, sample: &T) -> Result<Self, AlgebraError> {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: RingElem>(&self, f: impl Fn(&T) -> U) -> RingMatrix<U> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        RingMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::SizeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Self::from_fn(self.rows, other.cols, |i, j| {
            (1..self.cols).fold(self.get(i, 0).times(other.get(0, j)), |acc, k| {
                acc.plus(&self.get(i, k).times(other.get(k, j)))
            })
        })
    }

    /// Reorders rows and columns by the same permutation: entry `(a, b)` of
    /// the result is entry `(perm[a], perm[b])` of `self`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        if !self.is_square() || perm.len() != self.rows {
            return Err(AlgebraError::SizeMismatch {
                expected: self.rows,
                found: perm.len(),
            });
        }
        Self::from_fn(self.rows, self.cols, |a, b| self.get(perm[a], perm[b]).clone())
    }

    fn check_square(&self) -> Result<usize, AlgebraError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(AlgebraError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for RingMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

const COFACTOR_MAX: usize = 4;
const DIRECT_PERMANENT_MAX: usize = 4;

/// Determinant: cofactor expansion up to 4x4, fraction-free Bareiss beyond.
pub fn determinant<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    let n = m.check_square()?;
    if n <= COFACTOR_MAX {
        Ok(det_cofactor_rec(m, &(0..n).collect::<Vec<_>>(), 0))
    } else {
        bareiss(m)
    }
}

/// Laplace expansion along the first row, whatever the size.
pub fn determinant_cofactor<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    let n = m.check_square()?;
    Ok(det_cofactor_rec(m, &(0..n).collect::<Vec<_>>(), 0))
}

/// Bareiss elimination, whatever the size.
pub fn determinant_bareiss<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    m.check_square()?;
    bareiss(m)
}

fn det_cofactor_rec<T: RingElem>(m: &RingMatrix<T>, cols: &[usize], row: usize) -> T {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = m.get(row, cols[0]).zero_like();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.times(&det_cofactor_rec(m, &rest, row + 1));
        acc = if k % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

fn bareiss<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    let n = m.rows;
    let mut a: Vec<Vec<T>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = a[0][0].one_like();
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero_elem()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(a[0][0].zero_like()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        bottom.par_iter_mut().try_for_each(|row| {
            for j in k + 1..n {
                let num = row[j].times(&pivot_row[k]).minus(&row[k].times(&pivot_row[j]));
                row[j] = num.div_exact(&prev).ok_or(AlgebraError::NotDivisible)?;
            }
            Ok::<_, AlgebraError>(())
        })?;
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.negate() } else { d })
}

/// Permanent: direct expansion up to 4x4, Ryser's formula beyond.
pub fn permanent<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    let n = m.check_square()?;
    if n <= DIRECT_PERMANENT_MAX {
        Ok(perm_expand_rec(m, &(0..n).collect::<Vec<_>>(), 0))
    } else {
        Ok(ryser(m))
    }
}

/// Expansion along rows over all permutations, whatever the size.
pub fn permanent_expansion<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    let n = m.check_square()?;
    Ok(perm_expand_rec(m, &(0..n).collect::<Vec<_>>(), 0))
}

/// Ryser's inclusion-exclusion formula, whatever the size.
pub fn permanent_ryser<T: RingElem>(m: &RingMatrix<T>) -> Result<T, AlgebraError> {
    m.check_square()?;
    Ok(ryser(m))
}

fn perm_expand_rec<T: RingElem>(m: &RingMatrix<T>, cols: &[usize], row: usize) -> T {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = m.get(row, cols[0]).zero_like();
    for &c in cols {
        let a = m.get(row, c);
        if a.is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        acc = acc.plus(&a.times(&perm_expand_rec(m, &rest, row + 1)));
    }
    acc
}

// perm(A) = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j∈S} a_ij, walking the
// subsets in Gray-code order so each step updates the row sums by one column.
fn ryser<T: RingElem>(m: &RingMatrix<T>) -> T {
    let n = m.rows;
    let zero = m.get(0, 0).zero_like();
    let mut row_sums = vec![zero.clone(); n];
    let mut in_set = vec![false; n];
    let mut set_size = 0usize;
    let mut total = zero;
    for k in 1u64..(1u64 << n) {
        let col = k.trailing_zeros() as usize;
        in_set[col] = !in_set[col];
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s = if in_set[col] {
                s.plus(m.get(i, col))
            } else {
                s.minus(m.get(i, col))
            };
        }
        if in_set[col] {
            set_size += 1;
        } else {
            set_size -= 1;
        }
        let prod = row_sums[1..].iter().fold(row_sums[0].clone(), |acc, s| acc.times(s));
        total = if set_size.is_multiple_of(2) { total.plus(&prod) } else { total.minus(&prod) };
    }
    if n.is_multiple_of(2) {
        total
    } else {
        total.negate()
    }
}

/// A weakly increasing tuple `1 <= i1 <= ... <= ip <= l` (entries are 1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WpIndex(Vec<usize>);

impl WpIndex {
    pub fn new(entries: Vec<usize>, l: usize) -> Result<Self, AlgebraError> {
        let ok = entries.iter().all(|&e| (1..=l).contains(&e))
            && entries.windows(2).all(|w| w[0] <= w[1]);
        if !ok {
            return Err(AlgebraError::IndexOutOfRange(format!(
                "{entries:?} is not a weakly increasing tuple in 1..={l}"
            )));
        }
        Ok(WpIndex(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i'`: how often each of `1..=l` occurs.
    pub fn multiplicities(&self, l: usize) -> Vec<u32> {
        let mut m = vec![0u32; l];
        for &e in &self.0 {
            m[e - 1] += 1;
        }
        m
    }

    /// `i'! = i'_1! ... i'_l!`.
    pub fn multiplicity_factorial(&self, l: usize) -> BigInt {
        self.multiplicities(l)
            .into_iter()
            .map(factorial)
            .fold(BigInt::one(), |a, b| a * b)
    }
}

impl fmt::Display for WpIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> u32 {
    if k > n {
        return 0;
    }
    u32::try_from(num_integer::binomial(u64::from(n), u64::from(k))).expect("binomial overflow")
}

/// All of `W_p` for dimension `l`, in ascending lexicographic order.
pub fn enumerate_wp(l: usize, p: usize) -> Vec<WpIndex> {
    assert!(l >= 1, "dimension must be positive");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(l: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<WpIndex>) {
        if cur.len() == p {
            out.push(WpIndex(cur.clone()));
            return;
        }
        for e in start..=l {
            cur.push(e);
            rec(l, p, e, cur, out);
            cur.pop();
        }
    }
    rec(l, p, 1, &mut cur, &mut out);
    out
}

/// Convenience form returning `(i', i'!)`.
pub fn multiplicity_factorial(idx: &WpIndex, l: usize) -> (Vec<u32>, BigInt) {
    (idx.multiplicities(l), idx.multiplicity_factorial(l))
}

/// `γ_{l,p} = Π_{i ∈ W_p} i'!`.
pub fn gamma(l: usize, p: usize) -> BigInt {
    enumerate_wp(l, p)
        .iter()
        .map(|i| i.multiplicity_factorial(l))
        .fold(BigInt::one(), |a, b| a * b)
}

/// Exponent `C(p+l-1, l)` appearing in the symmetric-power determinant.
pub fn sym_power_exponent(l: usize, p: usize) -> u32 {
    binomial((p + l - 1) as u32, l as u32)
}

/// `M^(p)`: entry `(i, j)` is the permanent of `(u_{i_a, j_b})_{a,b}`, with
/// rows and columns in [`enumerate_wp`] order.
pub fn sym_power_matrix<T: RingElem>(m: &RingMatrix<T>, p: usize) -> Result<RingMatrix<T>, AlgebraError> {
    let l = m.check_square()?;
    let idx = enumerate_wp(l, p);
    let n = idx.len();
    if p == 0 {
        return RingMatrix::new(1, 1, vec![m.get(0, 0).one_like()]);
    }
    let data: Vec<T> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&idx[k / n], &idx[k % n]);
            let sub = RingMatrix::from_fn(p, p, |r, c| {
                m.get(a.entries()[r] - 1, b.entries()[c] - 1).clone()
            })
            .expect("p >= 1");
            permanent(&sub).expect("square")
        })
        .collect();
    RingMatrix::new(n, n, data)
}

/// The matrix of the induced map on `Sym^p` in the monomial basis: column `j`
/// of `M^(p)` divided by `j'!`.
pub fn rescaled_sym_power_matrix(
    m: &RingMatrix<Rational>,
    p: usize,
) -> Result<RingMatrix<Rational>, AlgebraError> {
    let l = m.check_square()?;
    let idx = enumerate_wp(l, p);
    let full = sym_power_matrix(m, p)?;
    let scales: Vec<Rational> = idx
        .iter()
        .map(|j| Rational::from_integer(j.multiplicity_factorial(l)))
        .collect();
    RingMatrix::from_fn(full.rows(), full.cols(), |a, b| full.get(a, b) / &scales[b])
}

/// Checks `det M^(p) = γ_{l,p} (det M)^C(p+l-1, l)` exactly.
pub fn check_sym_power_det<T: RingElem>(m: &RingMatrix<T>, p: usize) -> Result<bool, AlgebraError> {
    let l = m.check_square()?;
    let lhs = determinant(&sym_power_matrix(m, p)?)?;
    let d = determinant(m)?;
    let rhs = d
        .int_like(&gamma(l, p))
        .times(&d.pow_elem(sym_power_exponent(l, p)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn int_matrix(rows: &[&[i64]]) -> RingMatrix<Rational> {
        RingMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn wp_enumeration() {
        let w = enumerate_wp(3, 2);
        let got: Vec<Vec<usize>> = w.iter().map(|i| i.entries().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 2], vec![2, 3], vec![3, 3]]
        );
        assert_eq!(enumerate_wp(1, 4), vec![WpIndex(vec![1, 1, 1, 1])]);
        assert_eq!(enumerate_wp(2, 0), vec![WpIndex(vec![])]);
        for l in 1..=4usize {
            for p in 0..=4usize {
                assert_eq!(
                    enumerate_wp(l, p).len() as u32,
                    binomial((p + l - 1) as u32, (l - 1) as u32)
                );
            }
        }
    }

    #[test]
    fn multiplicities() {
        let idx = WpIndex::new(vec![1, 1, 3], 3).unwrap();
        assert_eq!(multiplicity_factorial(&idx, 3), (vec![2, 0, 1], BigInt::from(2)));
        let idx = WpIndex::new(vec![1, 2], 2).unwrap();
        assert_eq!(multiplicity_factorial(&idx, 2), (vec![1, 1], BigInt::from(1)));
        let idx = WpIndex::new(vec![2, 2, 2, 2], 2).unwrap();
        assert_eq!(multiplicity_factorial(&idx, 2), (vec![0, 4], BigInt::from(24)));
        assert!(WpIndex::new(vec![2, 1], 2).is_err());
        assert!(WpIndex::new(vec![3], 2).is_err());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(1, 3), BigInt::from(6));
        assert_eq!(gamma(2, 2), BigInt::from(4));
        for l in 1..=4 {
            assert_eq!(gamma(l, 1), BigInt::from(1));
            assert_eq!(gamma(l, 0), BigInt::from(1));
        }
    }

    #[test]
    fn permanents() {
        assert_eq!(permanent(&int_matrix(&[&[1, 2], &[3, 4]])).unwrap(), rat(10));
        for n in 1..=7 {
            let id = RingMatrix::identity_like(n, &rat(0)).unwrap();
            assert_eq!(permanent(&id).unwrap(), rat(1));
        }
        let ones = int_matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(permanent(&ones).unwrap(), rat(6));
        assert_eq!(permanent_ryser(&ones).unwrap(), rat(6));
        assert!(permanent(&int_matrix(&[&[1, 2]])).is_err());
    }

    #[test]
    fn ryser_matches_expansion_on_larger_matrices() {
        // all-ones n×n has permanent n!
        for n in 1..=7usize {
            let m = RingMatrix::from_fn(n, n, |_, _| rat(1)).unwrap();
            assert_eq!(permanent(&m).unwrap(), Rational::from_integer(factorial(n as u32)));
        }
        let m = RingMatrix::from_fn(6, 6, |i, j| rat(((i * 7 + j * 3) % 5) as i64 - 2)).unwrap();
        assert_eq!(permanent_ryser(&m).unwrap(), permanent_expansion(&m).unwrap());
    }

    #[test]
    fn determinants() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let m = RingMatrix::from_rows(vec![vec![x.clone(), x.pow(2)], vec![y.clone(), -y.pow(2)]])
            .unwrap();
        let expected = -(&x * &y.pow(2)) - &x.pow(2) * &y;
        assert_eq!(determinant(&m).unwrap(), expected);
        assert_eq!(determinant_bareiss(&m).unwrap(), expected);

        let id = RingMatrix::identity_like(6, &rat(0)).unwrap();
        assert_eq!(determinant(&id).unwrap(), rat(1));
        let rep = int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(determinant(&rep).unwrap(), rat(0));
        assert_eq!(determinant_bareiss(&rep).unwrap(), rat(0));
        assert!(determinant(&int_matrix(&[&[1, 2]])).is_err());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = int_matrix(&[
            &[0, 1, 2, 0, 1],
            &[1, 0, 0, 3, 0],
            &[0, 0, 1, 1, 1],
            &[2, 1, 0, 0, 1],
            &[1, 1, 1, 1, 0],
        ]);
        assert_eq!(determinant_bareiss(&m).unwrap(), determinant_cofactor(&m).unwrap());
    }

    #[test]
    fn sym_power_small_cases() {
        let m = int_matrix(&[&[3, -1], &[4, 7]]);
        assert_eq!(sym_power_matrix(&m, 1).unwrap(), m);

        // diag(λ, 1), p = 2 → diag(2λ², λ, 2)
        let lam = rat(5);
        let d = RingMatrix::from_rows(vec![vec![lam.clone(), rat(0)], vec![rat(0), rat(1)]]).unwrap();
        let s = sym_power_matrix(&d, 2).unwrap();
        let expected = RingMatrix::from_rows(vec![
            vec![rat(2) * &lam * &lam, rat(0), rat(0)],
            vec![rat(0), lam.clone(), rat(0)],
            vec![rat(0), rat(0), rat(2)],
        ])
        .unwrap();
        assert_eq!(s, expected);

        // nine 2x2 permanents enumerated by hand
        let shear = int_matrix(&[&[1, 1], &[0, 1]]);
        let s2 = sym_power_matrix(&shear, 2).unwrap();
        assert_eq!(s2, int_matrix(&[&[2, 2, 2], &[0, 1, 2], &[0, 0, 2]]));
        assert_eq!(determinant(&s2).unwrap(), rat(4));
        assert!(check_sym_power_det(&shear, 2).unwrap());
        assert!(check_sym_power_det(&int_matrix(&[&[2, 0], &[0, 1]]), 2).unwrap());
        assert!(check_sym_power_det(&int_matrix(&[&[1, 2], &[2, 4]]), 3).unwrap());
    }
}
