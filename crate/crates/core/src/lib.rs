//! Exact computations with differential operators tangent to a central
//! hyperplane arrangement.
//!
//! The modules build on each other:
//!
//! - [`poly`]: polynomials over the rationals, exact division.
//! - [`linalg`]: determinants, permanents, `W_p` tuples, symmetric powers.
//! - [`weyl`]: normal-ordered differential operators and commutators.
//! - [`arrangement`]: arrangements, tangent derivations, Saito's criterion.
//! - [`jacobian`]: higher Jacobians of operator families.
//! - [`tangent`]: tangency tests and the decomposition of a tangent
//!   operator into words in a basis of tangent derivations.
//! - [`parse`]: text grammar and canonical printing.
//! - [`sample`]: seeded random instances.

pub mod arrangement;
pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod tangent;
pub mod weyl;

pub use arrangement::{Arrangement, SaitoBasis};
pub use error::AlgebraError;
pub use poly::{Degree, LinearForm, Monomial, Poly, Rational};
pub use tangent::{Decomposer, DeltaRepr, DeltaWord};
pub use weyl::{Derivation, DiffOp};
