//! Operators tangent to an arrangement.
//!
//! Tangency of `u` means `u Q^t ∈ Q^t Diff(S)` for all `t ≥ 1`, equivalently
//! `u α_i^t ∈ α_i^t Diff(S)` for every form and every `t`. Both tests here are
//! truncated at a caller-supplied `t_max`.
//!
//! Over a free arrangement with basis `θ_1..θ_l` every tangent operator is a
//! left `S`-combination of words `θ_{i1} ... θ_{iq}`; [`Decomposer`] finds
//! that combination level by level, reading the top coefficients off higher
//! Jacobians.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, SaitoBasis};
use crate::error::AlgebraError;
use crate::jacobian::{jacobian_row, word_product, OpFamily};
use crate::linalg::{binomial, determinant, gamma, sym_power_exponent, RingMatrix, WpIndex};
use crate::parse::{parse_poly, render_poly, ParseError, VarStyle};
use crate::poly::{Degree, Monomial, Poly, Rational};
use crate::weyl::{Derivation, DiffOp};

/// `coeff · θ_{word[0]} ... θ_{word[q-1]}` with 1-based, weakly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaWord {
    pub coeff: Poly,
    pub word: Vec<usize>,
}

/// An operator written as `Σ coeff · word` over a list of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaRepr {
    words: Vec<DeltaWord>,
    generators: Vec<DiffOp>,
}

/// JSON shape of one word: `{"coeff": "<poly>", "word": [i, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaWordRecord {
    pub coeff: String,
    pub word: Vec<usize>,
}

impl DeltaRepr {
    /// Merges equal words, drops zero coefficients and sorts by word length,
    /// then lexicographically.
    pub fn new(words: Vec<DeltaWord>, generators: Vec<DiffOp>) -> Self {
        let mut merged: BTreeMap<(usize, Vec<usize>), Poly> = BTreeMap::new();
        for w in words {
            let key = (w.word.len(), w.word);
            match merged.get_mut(&key) {
                Some(c) => *c = &*c + &w.coeff,
                None => {
                    merged.insert(key, w.coeff);
                }
            }
        }
        let words = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((_, word), coeff)| DeltaWord { coeff, word })
            .collect();
        DeltaRepr { words, generators }
    }

    pub fn words(&self) -> &[DeltaWord] {
        &self.words
    }

    pub fn generators(&self) -> &[DiffOp] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Longest word length.
    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(|w| w.word.len()).max().unwrap_or(0)
    }

    /// `Σ coeff · θ_{i1} ... θ_{iq}` in normal form.
    pub fn reassemble(&self) -> DiffOp {
        let n = self
            .generators
            .first()
            .map(DiffOp::nvars)
            .or_else(|| self.words.first().map(|w| w.coeff.nvars()))
            .unwrap_or(0);
        let mut cache: HashMap<&[usize], DiffOp> = HashMap::new();
        let mut acc = DiffOp::zero(n);
        for w in &self.words {
            let prod = cache
                .entry(&w.word)
                .or_insert_with(|| word_product(&self.generators, &w.word));
            acc = acc + prod.left_mul_poly(&w.coeff);
        }
        acc
    }

    pub fn records(&self, style: VarStyle) -> Vec<DeltaWordRecord> {
        self.words
            .iter()
            .map(|w| DeltaWordRecord {
                coeff: render_poly(&w.coeff, style),
                word: w.word.clone(),
            })
            .collect()
    }

    pub fn from_records(
        records: &[DeltaWordRecord],
        generators: Vec<DiffOp>,
        nvars: usize,
    ) -> Result<Self, ParseError> {
        let words = records
            .iter()
            .map(|r| {
                Ok(DeltaWord {
                    coeff: parse_poly(&r.coeff, nvars)?,
                    word: r.word.clone(),
                })
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        Ok(DeltaRepr::new(words, generators))
    }
}

/// Outcome of one `(form, t)` tangency check.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyCheck {
    /// Zero-based index of the form.
    pub form: usize,
    pub t: u32,
    /// A normal-form coefficient of `u α^t` not divisible by `α^t`, if any.
    pub witness: Option<(Monomial, Poly)>,
}

impl TangencyCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Full table of per-form, per-`t` checks.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyReport {
    pub t_max: u32,
    pub checks: Vec<TangencyCheck>,
}

impl TangencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(TangencyCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&TangencyCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

fn check_op_dim(u: &DiffOp, arr: &Arrangement) -> Result<(), AlgebraError> {
    if u.nvars() != arr.dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: arr.dim(),
            right: u.nvars(),
        });
    }
    Ok(())
}

/// Every `(form, t)` check of `u α_i^t ∈ α_i^t Diff(S)` for `t ≤ t_max`.
pub fn tangency_report(u: &DiffOp, arr: &Arrangement, t_max: u32) -> Result<TangencyReport, AlgebraError> {
    check_op_dim(u, arr)?;
    let mut checks = Vec::new();
    for (form, a) in arr.form_polys().iter().enumerate() {
        let mut prod = u.clone();
        let a_op = DiffOp::from_poly(a.clone());
        for t in 1..=t_max {
            prod = &prod * &a_op;
            checks.push(TangencyCheck {
                form,
                t,
                witness: prod.right_ideal_witness(a, t)?,
            });
        }
    }
    Ok(TangencyReport { t_max, checks })
}

/// Per-hyperplane test: `u α_i^t ∈ α_i^t Diff(S)` for all `i` and `1 ≤ t ≤ t_max`.
pub fn is_tangent(u: &DiffOp, arr: &Arrangement, t_max: u32) -> Result<bool, AlgebraError> {
    check_op_dim(u, arr)?;
    for a in arr.form_polys() {
        let a_op = DiffOp::from_poly(a.clone());
        let mut prod = u.clone();
        for t in 1..=t_max {
            prod = &prod * &a_op;
            if !prod.in_right_ideal(a, t)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Defining-polynomial test: `u Q^t ∈ Q^t Diff(S)` for `1 ≤ t ≤ t_max`.
pub fn is_tangent_q(u: &DiffOp, arr: &Arrangement, t_max: u32) -> Result<bool, AlgebraError> {
    check_op_dim(u, arr)?;
    let q = arr.defining_poly();
    let q_op = DiffOp::from_poly(q.clone());
    let mut prod = u.clone();
    for t in 1..=t_max {
        prod = &prod * &q_op;
        if !prod.in_right_ideal(q, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The derivations `Q ∂_1, ..., Q ∂_l`, all tangent to the arrangement.
pub fn q_partials(arr: &Arrangement) -> Vec<DiffOp> {
    let l = arr.dim();
    (0..l)
        .map(|i| DiffOp::term(arr.defining_poly().clone(), Monomial::var(l, i)))
        .collect()
}

/// Writes `Q^C(p+1,2) u` (with `p` the order of `u`) as a combination of
/// words in `Q∂_1, ..., Q∂_l`.
pub fn transport(u: &DiffOp, arr: &Arrangement) -> Result<DeltaRepr, AlgebraError> {
    check_op_dim(u, arr)?;
    if u.is_zero() {
        return Err(AlgebraError::ZeroOperator);
    }
    let gens = q_partials(arr);
    let words = transport_words(u, arr.defining_poly(), &gens);
    Ok(DeltaRepr::new(words, gens))
}

// Peel the top layer Σ f_β ∂^β into Σ f_β (Q∂)^β, which agrees with Q^p u up
// to order p-1, then recurse on the remainder.
fn transport_words(u: &DiffOp, q: &Poly, gens: &[DiffOp]) -> Vec<DeltaWord> {
    let p = match u.order() {
        Degree::NegInfinity => return Vec::new(),
        Degree::Finite(0) => {
            return vec![DeltaWord {
                coeff: u.value_at_one(),
                word: Vec::new(),
            }]
        }
        Degree::Finite(p) => p,
    };
    let q_lower = q.pow(binomial(p, 2));
    let mut top = DiffOp::zero(u.nvars());
    let mut words = Vec::new();
    for (beta, f) in u.terms().filter(|(b, _)| b.total_degree() == p) {
        let word = beta_word(beta);
        top = top + word_product(gens, &word).left_mul_poly(f);
        words.push(DeltaWord {
            coeff: f * &q_lower,
            word,
        });
    }
    let rest = u.left_mul_poly(&q.pow(p)) - top;
    if let Degree::Finite(r) = rest.order() {
        assert!(r < p, "peeling the top layer must lower the order");
        let lift = q.pow(binomial(p, 2) - binomial(r + 1, 2));
        words.extend(transport_words(&rest, q, gens).into_iter().map(|w| DeltaWord {
            coeff: &w.coeff * &lift,
            word: w.word,
        }));
    }
    words
}

/// `∂^β` as a weakly increasing word of 1-based indices.
fn beta_word(beta: &Monomial) -> Vec<usize> {
    beta.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("not tangent: fails for form {form} at t = {t}")]
    NotTangent { form: usize, t: u32 },
    #[error("not in the algebra generated by S and Der(A): coefficient at level {level}, index {index} is not divisible")]
    NotDivisible { level: u32, index: WpIndex },
    #[error("order did not drop at level {level}")]
    OrderDidNotDrop { level: u32 },
    #[error("first Jacobian of the coordinates is not a nonzero multiple of Q")]
    BadCoordinates,
}

/// Options for [`Decomposer::decompose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DecomposeOptions {
    /// Run the truncated tangency test before decomposing.
    pub skip_precheck: bool,
    /// Truncation for the pre-check; defaults to `max(order(u), 1)`.
    pub t_max: Option<u32>,
}

struct Level {
    family: OpFamily,
    base_rows: Vec<Vec<Poly>>,
    divisor: Poly,
}

/// Decomposes tangent operators over a fixed free arrangement and basis.
/// Per-level data (the family `θ^(p)`, its Jacobian rows, the divisor
/// `γ_{l,p} (λ_f Q)^C(p+l-1,l)`) is computed once and reused.
pub struct Decomposer {
    arr: Arrangement,
    thetas: Vec<DiffOp>,
    coords: Vec<Poly>,
    first_jacobian: Poly,
    levels: HashMap<u32, Level>,
}

impl Decomposer {
    /// `coords` is an ordered basis of linear forms (usually the coordinates).
    pub fn new(arr: &Arrangement, basis: &SaitoBasis, coords: &[Poly]) -> Result<Self, DecomposeError> {
        let l = arr.dim();
        if coords.len() != l || basis.thetas().len() != l {
            return Err(AlgebraError::SizeMismatch {
                expected: l,
                found: coords.len().min(basis.thetas().len()),
            }
            .into());
        }
        let thetas: Vec<DiffOp> = basis.thetas().iter().map(Derivation::to_diffop).collect();
        let rows: Vec<Vec<Poly>> = thetas
            .iter()
            .map(|t| coords.iter().map(|f| t.apply(f)).collect())
            .collect();
        let first_jacobian = determinant(&RingMatrix::from_rows(rows)?)?;
        let ratio = first_jacobian
            .exact_divide(arr.defining_poly())
            .map_err(|_| DecomposeError::BadCoordinates)?;
        if ratio.constant_value().is_none() || ratio.is_zero() {
            return Err(DecomposeError::BadCoordinates);
        }
        Ok(Decomposer {
            arr: arr.clone(),
            thetas,
            coords: coords.to_vec(),
            first_jacobian,
            levels: HashMap::new(),
        })
    }

    pub fn generators(&self) -> &[DiffOp] {
        &self.thetas
    }

    fn level(&mut self, p: u32) -> Result<&Level, DecomposeError> {
        if !self.levels.contains_key(&p) {
            let l = self.arr.dim();
            let family = OpFamily::theta_power(&self.thetas, p as usize)?;
            let base_rows: Vec<Vec<Poly>> = family
                .entries()
                .par_iter()
                .map(|op| jacobian_row(op, &self.coords, family.indices()))
                .collect();
            let divisor = self
                .first_jacobian
                .pow(sym_power_exponent(l, p as usize))
                .scale(&Rational::from_integer(gamma(l, p as usize)));
            self.levels.insert(
                p,
                Level {
                    family,
                    base_rows,
                    divisor,
                },
            );
        }
        Ok(&self.levels[&p])
    }

    /// Writes `u` as `Σ ū_k θ_{k1} ... θ_{kp}` over all levels.
    ///
    /// At level `p = order(u)` the coefficient of the word `k ∈ W_p` is the
    /// higher Jacobian of the family `θ^(p)` with entry `k` replaced by `u`,
    /// divided by `γ_{l,p} (λ Q)^C(p+l-1,l)`. Subtracting those words drops
    /// the order; the order-zero remainder is the empty word.
    pub fn decompose(&mut self, u: &DiffOp, opts: DecomposeOptions) -> Result<DeltaRepr, DecomposeError> {
        check_op_dim(u, &self.arr)?;
        if !opts.skip_precheck {
            let t_max = opts
                .t_max
                .unwrap_or_else(|| u.order().finite().unwrap_or(0).max(1));
            let report = tangency_report(u, &self.arr, t_max)?;
            if let Some(fail) = report.first_failure() {
                return Err(DecomposeError::NotTangent {
                    form: fail.form,
                    t: fail.t,
                });
            }
        }
        let mut words = Vec::new();
        let mut cur = u.clone();
        while let Degree::Finite(p) = cur.order() {
            if p == 0 {
                break;
            }
            let coords = self.coords.clone();
            let level = self.level(p)?;
            let cols = level.family.indices();
            let u_row = jacobian_row(&cur, &coords, cols);
            let coeffs: Vec<Poly> = (0..cols.len())
                .into_par_iter()
                .map(|k| {
                    let mut rows = level.base_rows.clone();
                    rows[k] = u_row.clone();
                    let jac = determinant(&RingMatrix::from_rows(rows)?)?;
                    jac.exact_divide(&level.divisor).map_err(|e| match e {
                        AlgebraError::NotDivisible => DecomposeError::NotDivisible {
                            level: p,
                            index: cols[k].clone(),
                        },
                        other => other.into(),
                    })
                })
                .collect::<Result<_, _>>()?;
            let mut correction = DiffOp::zero(u.nvars());
            for ((bar, k), word_op) in coeffs.into_iter().zip(cols).zip(level.family.entries()) {
                if bar.is_zero() {
                    continue;
                }
                correction = correction + word_op.left_mul_poly(&bar);
                words.push(DeltaWord {
                    coeff: bar,
                    word: k.entries().to_vec(),
                });
            }
            let next = cur - correction;
            if next.order() >= Degree::Finite(p) {
                return Err(DecomposeError::OrderDidNotDrop { level: p });
            }
            cur = next;
        }
        if !cur.is_zero() {
            words.push(DeltaWord {
                coeff: cur.value_at_one(),
                word: Vec::new(),
            });
        }
        Ok(DeltaRepr::new(words, self.thetas.clone()))
    }
}

/// One-shot decomposition; see [`Decomposer::decompose`].
pub fn decompose(
    u: &DiffOp,
    arr: &Arrangement,
    basis: &SaitoBasis,
    coords: &[Poly],
    opts: DecomposeOptions,
) -> Result<DeltaRepr, DecomposeError> {
    Decomposer::new(arr, basis, coords)?.decompose(u, opts)
}
