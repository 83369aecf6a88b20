//! Exact intersection theory for loci of plane foliations.
//!
//! The crate computes codimensions and degrees of the loci of degree-`d`
//! foliations of the projective plane (or of a polarized surface) that have a
//! singular point of order at least `k` (`M_k`), a dicritical one (`D_k`), or a
//! dicritical one with maximal contact (`C_k`). Everything is exact: Chern
//! classes live in a truncated graded ring with rational coefficients and
//! the foliation degree `d` stays symbolic.
//!
//! Layout:
//! - [`algebra`]: rationals, truncated polynomials, root elimination, interpolation
//! - [`chow`]: Chow rings of `P²` and of an abstract surface, integration
//! - [`bundle`]: Chern classes of duals, twists, tensor and symmetric powers, jets
//! - [`loci`]: the enumerative answers, closed forms and cross-validation
//! - [`dsl`]: a small expression language over all of the above

pub mod algebra;
pub mod bundle;
pub mod chow;
pub mod dsl;
pub mod exec;
pub mod loci;

pub use algebra::{Monomial, Rational, RingElement, Var};
pub use bundle::BundleClass;
pub use chow::{ChowContext, IntersectionNumbers};
pub use exec::Exec;
pub use loci::{Locus, LocusReport};
