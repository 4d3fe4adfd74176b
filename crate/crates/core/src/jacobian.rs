//! Higher Jacobians of operator families indexed by `W_p`.
//!
//! For `f ∈ S^l` and a family `u = (u_i)_{i ∈ W_p}` the `p`-th Jacobian is
//! `det([u_i, f_{j1}, ..., f_{jp}](1))_{i,j ∈ W_p}`; for `p = 1` and
//! derivations it is the usual Jacobian determinant.

use rayon::prelude::*;

use crate::error::AlgebraError;
use crate::linalg::{determinant, enumerate_wp, gamma, permanent, sym_power_exponent, RingMatrix, WpIndex};
use crate::poly::{Poly, Rational};
use crate::weyl::{iterated_commutator, DiffOp};

/// One operator per element of `W_p`, in [`enumerate_wp`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct OpFamily {
    l: usize,
    p: usize,
    index: Vec<WpIndex>,
    entries: Vec<DiffOp>,
}

impl OpFamily {
    pub fn new(l: usize, p: usize, entries: Vec<DiffOp>) -> Result<Self, AlgebraError> {
        let index = enumerate_wp(l, p);
        if entries.len() != index.len() {
            return Err(AlgebraError::SizeMismatch {
                expected: index.len(),
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|u| u.nvars() != l) {
            return Err(AlgebraError::DimensionMismatch {
                left: l,
                right: bad.nvars(),
            });
        }
        Ok(OpFamily { l, p, index, entries })
    }

    pub fn from_fn(l: usize, p: usize, f: impl Fn(&WpIndex) -> DiffOp) -> Result<Self, AlgebraError> {
        let entries = enumerate_wp(l, p).iter().map(f).collect();
        Self::new(l, p, entries)
    }

    /// `θ^(p)`: entry `i` is the product `θ_{i1} ... θ_{ip}`.
    pub fn theta_power(theta: &[DiffOp], p: usize) -> Result<Self, AlgebraError> {
        let l = theta.len();
        if l == 0 {
            return Err(AlgebraError::SizeMismatch { expected: 1, found: 0 });
        }
        Self::from_fn(l, p, |i| word_product(theta, i.entries()))
    }

    pub fn dim(&self) -> usize {
        self.l
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn indices(&self) -> &[WpIndex] {
        &self.index
    }

    pub fn entries(&self) -> &[DiffOp] {
        &self.entries
    }

    pub fn position(&self, j: &WpIndex) -> Option<usize> {
        self.index.binary_search(j).ok()
    }

    pub fn get(&self, j: &WpIndex) -> Option<&DiffOp> {
        self.position(j).map(|k| &self.entries[k])
    }

    /// The family with entry `j` replaced by `w`.
    pub fn substitute(&self, w: DiffOp, j: &WpIndex) -> Result<Self, AlgebraError> {
        let k = self
            .position(j)
            .ok_or_else(|| AlgebraError::IndexOutOfRange(format!("{j} is not in W_{}", self.p)))?;
        if w.nvars() != self.l {
            return Err(AlgebraError::DimensionMismatch {
                left: self.l,
                right: w.nvars(),
            });
        }
        let mut out = self.clone();
        out.entries[k] = w;
        Ok(out)
    }
}

/// `θ_{w1} ... θ_{wq}` for a word of 1-based indices; the empty word is 1.
pub fn word_product(theta: &[DiffOp], word: &[usize]) -> DiffOp {
    let n = theta.first().map_or(0, DiffOp::nvars);
    word.iter()
        .fold(DiffOp::one(n), |acc, &i| &acc * &theta[i - 1])
}

/// Row of the Jacobian matrix belonging to the operator `u`:
/// `[u, f_{j1}, ..., f_{jp}](1)` for each `j ∈ W_p`.
pub fn jacobian_row(u: &DiffOp, f: &[Poly], cols: &[WpIndex]) -> Vec<Poly> {
    cols.iter()
        .map(|j| {
            let fs: Vec<Poly> = j.entries().iter().map(|&k| f[k - 1].clone()).collect();
            iterated_commutator(u, &fs).value_at_one()
        })
        .collect()
}

fn check_tuple(f: &[Poly], l: usize) -> Result<(), AlgebraError> {
    if f.len() != l {
        return Err(AlgebraError::SizeMismatch {
            expected: l,
            found: f.len(),
        });
    }
    if let Some(bad) = f.iter().find(|g| g.nvars() != l) {
        return Err(AlgebraError::DimensionMismatch {
            left: l,
            right: bad.nvars(),
        });
    }
    Ok(())
}

/// The matrix `([u_i, f_{j1}, ..., f_{jp}](1))_{i,j}`.
pub fn jacobian_matrix(f: &[Poly], u: &OpFamily) -> Result<RingMatrix<Poly>, AlgebraError> {
    check_tuple(f, u.l)?;
    let rows: Vec<Vec<Poly>> = u
        .entries
        .par_iter()
        .map(|ui| jacobian_row(ui, f, &u.index))
        .collect();
    RingMatrix::from_rows(rows)
}

/// `∂^p f / ∂^p u`.
pub fn higher_jacobian(f: &[Poly], u: &OpFamily) -> Result<Poly, AlgebraError> {
    determinant(&jacobian_matrix(f, u)?)
}

/// Both sides of `∂^p f/∂^p θ^(p) = γ_{l,p} (∂^1 f/∂^1 θ)^C(p+l-1, l)`.
pub fn jacobian_power_sides(f: &[Poly], theta: &[DiffOp], p: usize) -> Result<(Poly, Poly), AlgebraError> {
    let l = theta.len();
    check_tuple(f, l)?;
    let lhs = higher_jacobian(f, &OpFamily::theta_power(theta, p)?)?;
    let first = higher_jacobian(f, &OpFamily::theta_power(theta, 1)?)?;
    let rhs = first
        .pow(sym_power_exponent(l, p))
        .scale(&Rational::from_integer(gamma(l, p)));
    Ok((lhs, rhs))
}

/// Checks the power identity for operators of order at most one.
pub fn jacobian_power_identity_check(f: &[Poly], theta: &[DiffOp], p: usize) -> Result<bool, AlgebraError> {
    let (lhs, rhs) = jacobian_power_sides(f, theta, p)?;
    Ok(lhs == rhs)
}

/// `perm([θ_a, f_b](1))_{a,b}`: for derivations `θ_a` this equals
/// `[θ_1 ... θ_p, f_1, ..., f_p](1)`. Only used as a cross-check.
pub fn commutator_permanent(thetas: &[DiffOp], fs: &[Poly]) -> Result<Poly, AlgebraError> {
    if thetas.len() != fs.len() {
        return Err(AlgebraError::SizeMismatch {
            expected: thetas.len(),
            found: fs.len(),
        });
    }
    if thetas.is_empty() {
        let n = fs.first().map_or(0, Poly::nvars);
        return Ok(Poly::one(n));
    }
    let m = RingMatrix::from_fn(thetas.len(), fs.len(), |a, b| {
        iterated_commutator(&thetas[a], std::slice::from_ref(&fs[b])).value_at_one()
    })?;
    permanent(&m)
}
