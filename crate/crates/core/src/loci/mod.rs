//! Degrees and codimensions of the loci `M_k`, `D_k`, `C_k` in the space `P^N`
//! of degree-`d` foliations.
//!
//! - `M_k`: foliations with a singular point of order at least `k`
//! - `D_k`: those where such a point is dicritical
//! - `C_k`: dicritical with maximal contact (`k ≥ 2`)
//!
//! Each degree is the integral of a Segre class over the surface: with
//! `E = Ω(d+2)`, `s(M_k) = c(P^{k−1}(E))` and
//! `s(D_k) = s(M_k)·c(S^{k+1}Ω ⊗ O(d+2))`.

pub mod closed_form;
mod recover;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, Rational, RingElement};
use crate::bundle::{self, BundleClass, BundleError};
use crate::chow::{ChowContext, ChowError};

pub use closed_form::{closed_form_c, closed_form_d, closed_form_m, closed_form_vk, DReading};
pub use recover::{recover_bivariate, required_points, ReadingMatch, Recovery};
pub use verify::{verify_all, CheckEntry, CheckStatus, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LociError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{locus} needs k >= {min}, got {k}")]
    KOutOfRange { locus: Locus, k: usize, min: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("recovering {locus} needs at least {needed} values of k, got {got}")]
    InsufficientPoints {
        locus: Locus,
        needed: usize,
        got: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Locus {
    M,
    D,
    C,
}

impl Locus {
    pub const ALL: [Locus; 3] = [Locus::M, Locus::D, Locus::C];

    /// Smallest admissible `k`.
    pub fn min_k(self) -> usize {
        match self {
            Locus::M | Locus::D => 1,
            Locus::C => 2,
        }
    }

    pub fn codim(self, k: usize) -> i64 {
        let k = k as i64;
        match self {
            Locus::M => k * (k + 1) - 2,
            Locus::D => k * (k + 2),
            Locus::C => k * k + 3 * k - 2,
        }
    }

    /// Smallest `d` for which the degree formula is asserted.
    pub fn min_d(self, k: usize) -> i64 {
        match self {
            Locus::M => k as i64 - 1,
            Locus::D | Locus::C => k as i64,
        }
    }

    fn check_k(self, k: usize) -> Result<(), LociError> {
        if k < self.min_k() {
            return Err(LociError::KOutOfRange {
                locus: self,
                k,
                min: self.min_k(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Locus::M => "M",
            Locus::D => "D",
            Locus::C => "C",
        })
    }
}

impl FromStr for Locus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "M" | "m" => Ok(Locus::M),
            "D" | "d" => Ok(Locus::D),
            "C" | "c" => Ok(Locus::C),
            other => Err(format!("unknown locus '{other}', expected M, D or C")),
        }
    }
}

/// Codimension, degree and bookkeeping for one locus at one `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusReport {
    pub locus: Locus,
    pub k: usize,
    pub codim: i64,
    /// Polynomial in `d` (and the Chern numbers, on an abstract surface).
    pub degree: RingElement,
    /// The formula is asserted for `d >= min_d`.
    pub min_d: i64,
    /// Rank of the bundle whose projectivization maps onto `M_k`.
    pub rank_m: RingElement,
    /// Same for `D_k`.
    pub rank_d: RingElement,
    pub context: String,
    /// Concrete `d`, once [`LocusReport::at_d`] has been applied.
    pub d: Option<i64>,
    /// Warnings raised for a concrete `d`.
    pub flags: Vec<String>,
    pub notes: Vec<String>,
}

impl LocusReport {
    fn new(ctx: &ChowContext, locus: Locus, k: usize, degree: RingElement) -> Self {
        let d = ctx.d();
        LocusReport {
            locus,
            k,
            codim: locus.codim(k),
            degree,
            min_d: locus.min_d(k),
            rank_m: rank_m(&d, k),
            rank_d: rank_d(&d, k),
            context: ctx.name().to_string(),
            d: None,
            flags: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Specializes to a concrete degree `d`, flagging values outside the
    /// validity range and the boundary case `k = d + 1`.
    pub fn at_d(&self, d: i64) -> LocusReport {
        let dv = crate::algebra::Var::scalar("d");
        let mut out = self.clone();
        out.degree = self.degree.substitute_i64(&dv, d);
        out.rank_m = self.rank_m.substitute_i64(&dv, d);
        out.rank_d = self.rank_d.substitute_i64(&dv, d);
        out.d = Some(d);
        if d < self.min_d {
            out.flags.push(format!(
                "warning: d = {d} is outside the validity range d >= {}",
                self.min_d
            ));
        }
        if self.locus == Locus::D && self.k as i64 == d + 1 {
            out.flags.push(format!(
                "k = d + 1: every foliation in M_{k} is automatically dicritical, so D_{k} = M_{k}",
                k = self.k
            ));
        }
        out
    }

    pub fn validity(&self) -> String {
        format!("d >= {}", self.min_d)
    }
}

/// `(u, v, w)` with `[V_k] = u·H^{k−2} + v·h·H^{k−3} + w·h²·H^{k−4}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VkCoefficients {
    pub k: usize,
    pub u: i64,
    pub v: RingElement,
    pub w: RingElement,
}

/// `N = d² + 4d + 2`.
pub fn foliation_space_dim(d: &RingElement) -> RingElement {
    &(&(d * d) + &d.scale_i64(4)) + &RingElement::from_i64(2)
}

/// `rank M_k = (N + 1) − k(k+1)`.
pub fn rank_m(d: &RingElement, k: usize) -> RingElement {
    let k = k as i64;
    &(&foliation_space_dim(d) + &RingElement::one()) - &RingElement::from_i64(k * (k + 1))
}

/// `rank D_k = rank M_k − (k+2)`.
pub fn rank_d(d: &RingElement, k: usize) -> RingElement {
    &rank_m(d, k) - &RingElement::from_i64(k as i64 + 2)
}

/// `Ω ⊗ O((d + shift)·h)`.
pub fn twisted_cotangent(ctx: &ChowContext, shift: i64) -> Result<BundleClass, LociError> {
    let m = &ctx.d() + &RingElement::from_i64(shift);
    Ok(bundle::twist(
        &bundle::cotangent(ctx),
        &bundle::hyperplane_line(ctx, &m)?,
    )?)
}

/// `∫ c₂(Ω(d+2))`, the number of singular points of a generic foliation.
pub fn singular_point_count(ctx: &ChowContext) -> Result<RingElement, LociError> {
    let e = twisted_cotangent(ctx, 2)?;
    Ok(ctx.integrate(&e.chern_class(2))?)
}

/// `s(M_k) = c(P^{k−1}(Ω(d+2)))`.
pub fn segre_m(ctx: &ChowContext, k: usize) -> Result<RingElement, LociError> {
    Locus::M.check_k(k)?;
    let e = twisted_cotangent(ctx, 2)?;
    Ok(bundle::jet(k - 1, &e, ctx)?.chern().clone())
}

/// `s(D_k) = c(P^{k−1}(Ω(d+2)))·c(S^{k+1}Ω ⊗ O(d+2))`.
pub fn segre_d(ctx: &ChowContext, k: usize) -> Result<RingElement, LociError> {
    Locus::D.check_k(k)?;
    let quotient = sym_twisted(ctx, k + 1, 2)?;
    Ok(segre_m(ctx, k)?.try_mul(quotient.chern())?)
}

/// `S^j Ω ⊗ O((d + shift)·h)`.
fn sym_twisted(ctx: &ChowContext, j: usize, shift: i64) -> Result<BundleClass, LociError> {
    let m = &ctx.d() + &RingElement::from_i64(shift);
    let s = bundle::sym(j, &bundle::cotangent(ctx), ctx)?;
    Ok(bundle::tensor(&s, &bundle::hyperplane_line(ctx, &m)?, ctx)?)
}

pub fn deg_m(ctx: &ChowContext, k: usize) -> Result<LocusReport, LociError> {
    let degree = ctx.integrate(&segre_m(ctx, k)?.part(2))?;
    Ok(LocusReport::new(ctx, Locus::M, k, degree))
}

pub fn deg_d(ctx: &ChowContext, k: usize) -> Result<LocusReport, LociError> {
    let degree = ctx.integrate(&segre_d(ctx, k)?.part(2))?;
    let mut report = LocusReport::new(ctx, Locus::D, k, degree);
    report.notes.push(format!(
        "at d = {} (k = d + 1) D_{k} coincides with M_{k}",
        k as i64 - 1
    ));
    Ok(report)
}

/// `E = Ω ⊗ ∧²Ω ⊗ O(d+2)` and `E_k = S^{k−1}Ω ⊗ ∧²Ω ⊗ O(d+2)`.
pub fn vk_bundles(ctx: &ChowContext, k: usize) -> Result<(BundleClass, BundleClass), LociError> {
    let omega = bundle::cotangent(ctx);
    let det = bundle::wedge2(&omega)?;
    let o = bundle::hyperplane_line(ctx, &(&ctx.d() + &RingElement::from_i64(2)))?;
    let e = bundle::tensor(&bundle::tensor(&omega, &det, ctx)?, &o, ctx)?;
    let ek = bundle::tensor(
        &bundle::tensor(&bundle::sym(k - 1, &omega, ctx)?, &det, ctx)?,
        &o,
        ctx,
    )?;
    Ok((e, ek))
}

/// Checks `E = Ω(d−1)` and `E_k = S^{k−1}Ω(d−1)`, which relies on
/// `∧²Ω = O(−3)` and therefore only holds on `P²`.
pub fn vk_bundles_match_plane_twist(ctx: &ChowContext, k: usize) -> Result<bool, LociError> {
    let (e, ek) = vk_bundles(ctx, k)?;
    let e_alt = twisted_cotangent(ctx, -1)?;
    let ek_alt = sym_twisted(ctx, k - 1, -1)?;
    Ok(e.chern() == e_alt.chern()
        && ek.chern() == ek_alt.chern()
        && e.rank() == 2
        && ek.rank() == k)
}

/// The coefficient of `h` in a weight-1 class that must be a multiple of `h`.
fn h_coefficient(ctx: &ChowContext, x: &RingElement) -> Result<RingElement, LociError> {
    let c = x.coefficient_of(&Monomial::var(ctx.hyperplane_var()));
    if c.try_mul(&ctx.h())? != *x {
        return Err(LociError::Unsupported(format!(
            "class {x} is not a multiple of h"
        )));
    }
    Ok(c)
}

/// `u = k−1`, `v = (k−1)²s₁(E) − (k−1)s₁(E_k)`,
/// `w = ∫[(k−1)³s₂(E) − u·s₂(E_k) − v·h·s₁(E_k)]`, all from Segre classes.
pub fn vk_coeffs(ctx: &ChowContext, k: usize) -> Result<VkCoefficients, LociError> {
    if k < 2 {
        return Err(LociError::KOutOfRange {
            locus: Locus::C,
            k,
            min: 2,
        });
    }
    let (e, ek) = vk_bundles(ctx, k)?;
    let se = bundle::segre(&e)?;
    let sek = bundle::segre(&ek)?;
    let km1 = k as i64 - 1;
    let u = km1;

    let s1e = h_coefficient(ctx, &se.part(1))?;
    let s1ek = h_coefficient(ctx, &sek.part(1))?;
    let v = &s1e.scale_i64(km1 * km1) - &s1ek.scale_i64(km1);

    let h = ctx.h();
    let top = &(&se.part(2).scale_i64(km1 * km1 * km1) - &sek.part(2).scale_i64(u))
        - &(&(&v * &h) * &sek.part(1));
    let w = ctx.integrate(&top)?;
    Ok(VkCoefficients { k, u, v, w })
}

/// `∫ u·s₂(D_k) + v·h·s₁(D_k) + w·h²·s₀(D_k)`; on `P²` only, since the
/// cycle class of `V_k` is computed there.
pub fn deg_c(ctx: &ChowContext, k: usize) -> Result<LocusReport, LociError> {
    Locus::C.check_k(k)?;
    if !ctx.is_plane() {
        return Err(LociError::Unsupported(
            "the C_k degree is only available on P2".into(),
        ));
    }
    let vk = vk_coeffs(ctx, k)?;
    let s = segre_d(ctx, k)?;
    let h = ctx.h();
    let class = &(&s.part(2).scale_i64(vk.u) + &(&(&vk.v * &h) * &s.part(1)))
        + &(&(&vk.w * &h) * &(&h * &s.part(0)));
    let degree = ctx.integrate(&class)?;
    Ok(LocusReport::new(ctx, Locus::C, k, degree))
}

pub fn locus_report(ctx: &ChowContext, locus: Locus, k: usize) -> Result<LocusReport, LociError> {
    match locus {
        Locus::M => deg_m(ctx, k),
        Locus::D => deg_d(ctx, k),
        Locus::C => deg_c(ctx, k),
    }
}

/// `deg M_k` on a surface with symbolic Chern numbers `h2, c1h, c1sq, c2`.
pub fn general_surface_deg_m(k: usize) -> Result<RingElement, LociError> {
    Ok(deg_m(&ChowContext::abstract_surface(None), k)?.degree)
}

/// `deg D_k` on a surface with symbolic Chern numbers.
pub fn general_surface_deg_d(k: usize) -> Result<RingElement, LociError> {
    Ok(deg_d(&ChowContext::abstract_surface(None), k)?.degree)
}

/// True when `x` evaluates to a positive integer for every `d` in `range`.
pub fn positive_on(x: &RingElement, range: std::ops::RangeInclusive<i64>) -> bool {
    let dv = crate::algebra::Var::scalar("d");
    range.into_iter().all(|d| {
        x.substitute_i64(&dv, d)
            .as_rational()
            .is_some_and(|q: Rational| q.is_integer() && q.is_positive())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{specialize_to, IntersectionNumbers};

    #[test]
    fn space_dimension() {
        let ctx = ChowContext::p2();
        assert_eq!(foliation_space_dim(&ctx.d()).to_string(), "d^2 + 4*d + 2");
        assert_eq!(
            foliation_space_dim(&RingElement::from_i64(1)),
            RingElement::from_i64(7)
        );
        assert_eq!(
            foliation_space_dim(&RingElement::from_i64(2)),
            RingElement::from_i64(14)
        );
    }

    #[test]
    fn singular_points() {
        let ctx = ChowContext::p2();
        let n = singular_point_count(&ctx).unwrap();
        assert_eq!(n.to_string(), "d^2 + d + 1");
        assert_eq!(n.substitute_i64(ctx.param_var(), 0), RingElement::one());
        assert_eq!(n, deg_m(&ctx, 1).unwrap().degree);
    }

    #[test]
    fn m_degrees() {
        let ctx = ChowContext::p2();
        let got: Vec<String> = (1..=3)
            .map(|k| deg_m(&ctx, k).unwrap().degree.to_string())
            .collect();
        assert_eq!(
            got,
            ["d^2 + d + 1", "15*d^2 - 15*d + 6", "66*d^2 - 198*d + 153"]
        );
        assert_eq!(deg_m(&ctx, 3).unwrap().codim, 10);
        assert!(matches!(deg_m(&ctx, 0), Err(LociError::KOutOfRange { .. })));
    }

    #[test]
    fn d_degrees() {
        let ctx = ChowContext::p2();
        let d1 = deg_d(&ctx, 1).unwrap();
        assert_eq!(d1.degree.to_string(), "10*d^2 - 8*d + 4");
        assert_eq!(d1.codim, 3);
        assert_eq!(
            deg_d(&ctx, 2).unwrap().degree.to_string(),
            "45*d^2 - 117*d + 81"
        );
        let boundary = deg_d(&ctx, 3).unwrap().at_d(2);
        assert!(boundary
            .flags
            .iter()
            .any(|f| f.contains("automatically dicritical")));
    }

    #[test]
    fn rank_bookkeeping() {
        let d = RingElement::scalar_var(&crate::algebra::Var::scalar("d"));
        assert_eq!(rank_m(&d, 1).to_string(), "d^2 + 4*d + 1");
        assert_eq!(rank_d(&d, 1).to_string(), "d^2 + 4*d - 2");
    }

    #[test]
    fn vk_small_cases() {
        let ctx = ChowContext::p2();
        let v2 = vk_coeffs(&ctx, 2).unwrap();
        assert_eq!((v2.u, v2.v.is_zero(), v2.w.is_zero()), (1, true, true));
        let v3 = vk_coeffs(&ctx, 3).unwrap();
        assert_eq!(v3.u, 2);
        assert_eq!(v3.v.to_string(), "-2*d - 4");
        assert_eq!(v3.w.to_string(), "6*d^2 - 12*d + 6");
        assert!(vk_coeffs(&ctx, 1).is_err());
        for k in 2..=5 {
            assert!(vk_bundles_match_plane_twist(&ctx, k).unwrap());
        }
    }

    #[test]
    fn c_degrees() {
        let ctx = ChowContext::p2();
        let c2 = deg_c(&ctx, 2).unwrap();
        assert_eq!(c2.degree, deg_d(&ctx, 2).unwrap().degree);
        assert_eq!(c2.codim, 8);
        assert_eq!(
            deg_c(&ctx, 3).unwrap().degree.to_string(),
            "244*d^2 - 1220*d + 1534"
        );
        assert!(deg_c(&ctx, 1).is_err());
        assert!(matches!(
            deg_c(&ChowContext::abstract_surface(None), 2),
            Err(LociError::Unsupported(_))
        ));
    }

    #[test]
    fn general_surface_first_cases() {
        // ∫c₂(Ω(m)) = c2 + (d+2)·c1h + (d+2)²·h2
        let g1 = general_surface_deg_m(1).unwrap();
        assert_eq!(
            g1.to_string(),
            "d^2*h2 + c1h*d + 4*d*h2 + 2*c1h + c2 + 4*h2"
        );
        let p2 = IntersectionNumbers::p2();
        assert_eq!(specialize_to(&g1, &p2).to_string(), "d^2 + d + 1");
        let g2 = general_surface_deg_m(2).unwrap();
        assert_eq!(specialize_to(&g2, &p2).to_string(), "15*d^2 - 15*d + 6");
    }

    #[test]
    fn out_of_range_d_is_flagged() {
        let ctx = ChowContext::p2();
        let r = deg_m(&ctx, 4).unwrap().at_d(1);
        assert!(r.flags.iter().any(|f| f.starts_with("warning")));
        let ok = deg_m(&ctx, 2).unwrap().at_d(2);
        assert_eq!(ok.degree, RingElement::from_i64(36));
        assert!(ok.flags.is_empty());
    }
}
