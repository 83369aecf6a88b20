//! Exact arithmetic: rationals, truncated graded polynomials, elimination of
//! Chern roots, and univariate interpolation.

mod interp;
mod poly;
mod symmetric;

pub use interp::{interpolate_univariate, UnivariatePoly};
pub use poly::{CtxTag, Monomial, RingElement, Var};
pub use symmetric::symmetrize_in_roots;

use thiserror::Error;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different rings ({left} vs {right})")]
    ContextMismatch { left: String, right: String },
    #[error("constant term must be 1 to invert, found {0}")]
    NotUnit(String),
    #[error("element is not symmetric in the roots {a}, {b}")]
    NotSymmetric { a: String, b: String },
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(i64),
    #[error("interpolation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}
