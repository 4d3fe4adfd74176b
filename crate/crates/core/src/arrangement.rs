//! Central hyperplane arrangements, tangent derivations and Saito's freeness
//! criterion for a candidate basis.

use num_traits::Zero;
use thiserror::Error;

use crate::error::AlgebraError;
use crate::linalg::{determinant, RingMatrix};
use crate::poly::{LinearForm, Poly, Rational};
use crate::weyl::Derivation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("an arrangement needs at least one hyperplane")]
    Empty,
    #[error("form {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("form {index} is zero")]
    ZeroForm { index: usize },
    #[error("forms {first} and {second} are proportional (same hyperplane)")]
    Proportional { first: usize, second: usize },
}

/// Arrangement given by linear forms `α_1..α_r`, with the defining
/// polynomial `Q = α_1 ... α_r` and cofactors `β_i = Q / α_i` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<LinearForm>,
    form_polys: Vec<Poly>,
    q: Poly,
    cofactors: Vec<Poly>,
}

impl Arrangement {
    pub fn new(forms: Vec<LinearForm>) -> Result<Self, ArrangementError> {
        let dim = forms.first().ok_or(ArrangementError::Empty)?.dim();
        for (index, f) in forms.iter().enumerate() {
            if f.dim() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: f.dim(),
                });
            }
        }
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if forms[i].is_proportional(&forms[j]) {
                    return Err(ArrangementError::Proportional { first: i, second: j });
                }
            }
        }
        let form_polys: Vec<Poly> = forms.iter().map(LinearForm::to_poly).collect();
        let q = form_polys.iter().fold(Poly::one(dim), |acc, a| acc * a);
        let cofactors = (0..forms.len())
            .map(|i| {
                form_polys
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Poly::one(dim), |acc, (_, a)| acc * a)
            })
            .collect();
        Ok(Arrangement {
            dim,
            forms,
            form_polys,
            q,
            cofactors,
        })
    }

    /// Shorthand for integer coefficient rows.
    pub fn from_int_forms(rows: &[&[i64]]) -> Result<Self, ArrangementError> {
        let forms = rows
            .iter()
            .enumerate()
            .map(|(index, r)| {
                LinearForm::from_ints(r).map_err(|_| ArrangementError::ZeroForm { index })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(forms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of hyperplanes `r`.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn form_polys(&self) -> &[Poly] {
        &self.form_polys
    }

    pub fn defining_poly(&self) -> &Poly {
        &self.q
    }

    pub fn cofactors(&self) -> &[Poly] {
        &self.cofactors
    }

    /// Coordinate functions `(x1, ..., xl)`.
    pub fn coordinates(&self) -> Vec<Poly> {
        (0..self.dim).map(|i| Poly::var(self.dim, i)).collect()
    }

    fn check_dim(&self, n: usize) -> Result<(), AlgebraError> {
        if n != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: n,
            });
        }
        Ok(())
    }

    /// `δ ∈ Der(A)`: `δ(α_i) ∈ α_i S` for every form.
    pub fn contains_derivation(&self, delta: &Derivation) -> Result<bool, AlgebraError> {
        self.check_dim(delta.nvars())?;
        for a in &self.form_polys {
            if !a.power_divides(1, &delta.apply(a))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `δ(Q) ∈ Q S`, the defining-polynomial form of the same condition.
    pub fn contains_derivation_via_q(&self, delta: &Derivation) -> Result<bool, AlgebraError> {
        self.check_dim(delta.nvars())?;
        self.q.power_divides(1, &delta.apply(&self.q))
    }
}

/// `θ_E = Σ_i x_i ∂_i`.
pub fn euler_derivation(l: usize) -> Derivation {
    Derivation::new((0..l).map(|i| Poly::var(l, i)).collect()).expect("l >= 1")
}

/// A certified homogeneous basis of `Der(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SaitoBasis {
    thetas: Vec<Derivation>,
    lambda: Rational,
    degrees: Vec<u32>,
}

impl SaitoBasis {
    pub fn thetas(&self) -> &[Derivation] {
        &self.thetas
    }

    /// The scalar with `det(θ_i(x_j)) = λ Q`.
    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// Why a candidate basis was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SaitoFailure {
    #[error("expected {expected} derivations, got {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("derivation {index} lives in {found} variables, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("derivation {index} is not tangent to the arrangement")]
    NotTangent { index: usize },
    #[error("derivation {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("determinant {determinant} is not a nonzero multiple of Q = {q}")]
    DeterminantMismatch {
        determinant: Poly,
        q: Poly,
        degrees: Vec<Option<u32>>,
    },
}

/// Saito's criterion: `θ_1..θ_l` is a basis of `Der(A)` iff each `θ_i` is
/// tangent and `det(θ_i(x_j)) = λ Q` with `λ ≠ 0`. Homogeneity of each
/// candidate is required as well.
pub fn saito_check(arr: &Arrangement, thetas: &[Derivation]) -> Result<SaitoBasis, SaitoFailure> {
    let l = arr.dim();
    if thetas.len() != l {
        return Err(SaitoFailure::WrongCount {
            expected: l,
            found: thetas.len(),
        });
    }
    for (index, th) in thetas.iter().enumerate() {
        if th.nvars() != l {
            return Err(SaitoFailure::DimensionMismatch {
                index,
                expected: l,
                found: th.nvars(),
            });
        }
        if !arr.contains_derivation(th).expect("dimension checked") {
            return Err(SaitoFailure::NotTangent { index });
        }
        if !th.is_zero() && th.homogeneous_degree().is_none() {
            return Err(SaitoFailure::NotHomogeneous { index });
        }
    }
    let det = coefficient_determinant(thetas);
    let q = arr.defining_poly();
    let lambda = det
        .exact_divide(q)
        .ok()
        .and_then(|ratio| ratio.constant_value())
        .filter(|c| !c.is_zero());
    match lambda {
        Some(lambda) => Ok(SaitoBasis {
            thetas: thetas.to_vec(),
            lambda,
            degrees: thetas
                .iter()
                .map(|t| t.homogeneous_degree().expect("nonzero when det is nonzero"))
                .collect(),
        }),
        None => Err(SaitoFailure::DeterminantMismatch {
            determinant: det,
            q: q.clone(),
            degrees: thetas.iter().map(Derivation::homogeneous_degree).collect(),
        }),
    }
}

/// `det(θ_i(x_j))`, the determinant of the coefficient matrix.
pub fn coefficient_determinant(thetas: &[Derivation]) -> Poly {
    let rows: Vec<Vec<Poly>> = thetas.iter().map(|t| t.coeffs().to_vec()).collect();
    let m = RingMatrix::from_rows(rows).expect("square coefficient matrix");
    determinant(&m).expect("square coefficient matrix")
}

/// For `l = 2`: `(θ_E, Q_y ∂_x - Q_x ∂_y)`, a basis of degrees `(1, r-1)`
/// with `λ = -r`.
pub fn plane_basis(arr: &Arrangement) -> Option<Vec<Derivation>> {
    if arr.dim() != 2 {
        return None;
    }
    let q = arr.defining_poly();
    let hamiltonian = Derivation::new(vec![q.partial(1), -q.partial(0)]).ok()?;
    Some(vec![euler_derivation(2), hamiltonian])
}

/// Named arrangements shipped with the toolkit, some with a known basis.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub arrangement: Arrangement,
    pub basis: Option<Vec<Derivation>>,
}

/// Coordinate hyperplanes `x_1 ... x_l = 0`, basis `x_i ∂_i`.
pub fn boolean(l: usize) -> Fixture {
    let forms = (0..l)
        .map(|i| {
            let mut c = vec![Rational::zero(); l];
            c[i] = Rational::from_integer(1.into());
            LinearForm::new(c).expect("nonzero")
        })
        .collect();
    let arrangement = Arrangement::new(forms).expect("coordinate hyperplanes are distinct");
    let basis = (0..l)
        .map(|i| {
            let mut c = vec![Poly::zero(l); l];
            c[i] = Poly::var(l, i);
            Derivation::new(c).expect("l coefficients")
        })
        .collect();
    Fixture {
        name: format!("boolean{l}"),
        arrangement,
        basis: Some(basis),
    }
}

/// `xy(x+y)` with basis `(θ_E, x²∂_x - y²∂_y)`, `λ = -1`.
pub fn triple2() -> Fixture {
    let arrangement = Arrangement::from_int_forms(&[&[1, 0], &[0, 1], &[1, 1]]).expect("valid");
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let second = Derivation::new(vec![x.pow(2), -y.pow(2)]).expect("valid");
    Fixture {
        name: "triple2".into(),
        arrangement,
        basis: Some(vec![euler_derivation(2), second]),
    }
}

/// `xy(x+y)(x-y)`, basis from [`plane_basis`].
pub fn quad2() -> Fixture {
    let arrangement =
        Arrangement::from_int_forms(&[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]).expect("valid");
    let basis = plane_basis(&arrangement);
    Fixture {
        name: "quad2".into(),
        arrangement,
        basis,
    }
}

/// `xyz(x+y+z)`: not free, no basis.
pub fn generic3() -> Fixture {
    let arrangement = Arrangement::from_int_forms(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
        .expect("valid");
    Fixture {
        name: "generic3".into(),
        arrangement,
        basis: None,
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "boolean1", "boolean2", "boolean3", "boolean4", "triple2", "quad2", "generic3",
];

/// Looks up a fixture by name (`boolean<l>` for `l` in 1..=6, `triple2`,
/// `quad2`, `generic3`).
pub fn builtin(name: &str) -> Option<Fixture> {
    match name {
        "triple2" => Some(triple2()),
        "quad2" => Some(quad2()),
        "generic3" => Some(generic3()),
        _ => {
            let l: usize = name.strip_prefix("boolean")?.parse().ok()?;
            (1..=6).contains(&l).then(|| boolean(l))
        }
    }
}
