//! Chern-class calculus of vector bundles on a surface.
//!
//! A [`BundleClass`] is a rank together with a total Chern class and, when
//! known, a list of Chern roots. Tensor and symmetric powers go through the
//! roots (splitting principle), and the resulting classes are brought back to
//! the Chow ring by eliminating the roots of Ω.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

use crate::algebra::{AlgebraError, RingElement};
use crate::chow::{ChowContext, ChowError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("a line bundle needs a class of pure weight 1, got {0}")]
    NotWeightOne(String),
    #[error("expected a line bundle, got rank {0}")]
    NotLine(usize),
    #[error("expected a rank-2 bundle, got rank {0}")]
    NotRankTwo(usize),
    #[error("symmetric powers are only supported for rank 1 or 2, got rank {0}")]
    UnsupportedRank(usize),
    #[error("Chern roots are not available for a rank-{0} factor")]
    RootsUnavailable(usize),
}

/// A vector bundle up to its rank and Chern data. Equality compares roots as
/// a multiset.
#[derive(Clone, Debug)]
pub struct BundleClass {
    rank: usize,
    chern: RingElement,
    roots: Option<Vec<RingElement>>,
}

impl PartialEq for BundleClass {
    fn eq(&self, other: &Self) -> bool {
        let sorted = |r: &Option<Vec<RingElement>>| {
            r.clone().map(|mut v| {
                v.sort();
                v
            })
        };
        self.rank == other.rank
            && self.chern == other.chern
            && sorted(&self.roots) == sorted(&other.roots)
    }
}

impl Eq for BundleClass {}

impl BundleClass {
    /// Builds a bundle from raw data; `chern` must have constant term 1.
    pub fn from_chern(rank: usize, chern: RingElement) -> Result<Self, BundleError> {
        if chern.part(0) != RingElement::one() {
            return Err(AlgebraError::NotUnit(chern.part(0).to_string()).into());
        }
        Ok(BundleClass {
            rank,
            chern,
            roots: None,
        })
    }

    /// Builds a bundle from Chern roots, which must form a root-symmetric set.
    pub fn from_roots(roots: Vec<RingElement>, ctx: &ChowContext) -> Result<Self, BundleError> {
        let chern = chern_from_roots(&roots, ctx)?;
        Ok(BundleClass {
            rank: roots.len(),
            chern,
            roots: Some(roots),
        })
    }

    /// Trivial bundle of the given rank; all roots vanish.
    pub fn trivial(rank: usize) -> Self {
        BundleClass {
            rank,
            chern: RingElement::one(),
            roots: Some(vec![RingElement::zero(); rank]),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Total Chern class.
    pub fn chern(&self) -> &RingElement {
        &self.chern
    }

    /// `c_i`, the weight-`i` part of the total Chern class.
    pub fn chern_class(&self, i: u32) -> RingElement {
        self.chern.part(i)
    }

    pub fn roots(&self) -> Option<&[RingElement]> {
        self.roots.as_deref()
    }

    /// Roots, deriving the single root of a line bundle when missing.
    fn roots_or_derive(&self) -> Result<Vec<RingElement>, BundleError> {
        match (&self.roots, self.rank) {
            (Some(r), _) => Ok(r.clone()),
            (None, 0) => Ok(Vec::new()),
            (None, 1) => Ok(vec![self.chern.part(1)]),
            (None, r) => Err(BundleError::RootsUnavailable(r)),
        }
    }

    /// Drops the roots, keeping only rank and Chern class.
    pub fn forget_roots(&self) -> Self {
        BundleClass {
            rank: self.rank,
            chern: self.chern.clone(),
            roots: None,
        }
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bundle(rank={}, c={})", self.rank, self.chern)
    }
}

/// Π (1 + r) over the roots, with the Ω roots eliminated.
pub fn chern_from_roots(
    roots: &[RingElement],
    ctx: &ChowContext,
) -> Result<RingElement, BundleError> {
    let one = RingElement::one();
    let mut total = one.clone();
    for r in roots {
        total = total.try_mul(&one.try_add(r)?)?;
    }
    Ok(ctx.symmetrize(&total)?)
}

/// `O(c)` for a class `c` of weight 1.
pub fn line(c: &RingElement) -> Result<BundleClass, BundleError> {
    if !c.is_homogeneous(1) {
        return Err(BundleError::NotWeightOne(c.to_string()));
    }
    Ok(BundleClass {
        rank: 1,
        chern: &RingElement::one() + c,
        roots: Some(vec![c.clone()]),
    })
}

/// Ω, the cotangent bundle, split as the context's roots.
pub fn cotangent(ctx: &ChowContext) -> BundleClass {
    let (a, b) = ctx.roots();
    let chern = &(&RingElement::one() + ctx.omega_c1()) + ctx.omega_c2();
    BundleClass {
        rank: 2,
        chern,
        roots: Some(vec![a, b]),
    }
}

pub fn dual(b: &BundleClass) -> BundleClass {
    let mut chern = RingElement::zero();
    for i in 0..=b.chern.max_weight().unwrap_or(0) {
        let part = b.chern.part(i);
        chern = if i % 2 == 1 {
            &chern - &part
        } else {
            &chern + &part
        };
    }
    BundleClass {
        rank: b.rank,
        chern,
        roots: b.roots.as_ref().map(|rs| rs.iter().map(|r| -r).collect()),
    }
}

/// `B ⊗ L` for a line bundle `L`, through
/// `c(B ⊗ L) = Σᵢ cᵢ(B)·(1 + c₁(L))^(rank − i)`.
pub fn twist(b: &BundleClass, l: &BundleClass) -> Result<BundleClass, BundleError> {
    if l.rank != 1 {
        return Err(BundleError::NotLine(l.rank));
    }
    let shift = l.chern.part(1);
    let one_plus = &RingElement::one() + &shift;
    let mut chern = RingElement::zero();
    let top = b.chern.max_weight().unwrap_or(0) as usize;
    for i in 0..=top.min(b.rank) {
        let factor = one_plus.try_pow((b.rank - i) as u32)?;
        chern = chern.try_add(&b.chern.part(i as u32).try_mul(&factor)?)?;
    }
    let roots = b
        .roots
        .as_ref()
        .map(|rs| rs.iter().map(|r| r + &shift).collect());
    Ok(BundleClass {
        rank: b.rank,
        chern,
        roots,
    })
}

/// `A ⊗ B` via pairwise sums of roots.
pub fn tensor(
    a: &BundleClass,
    b: &BundleClass,
    ctx: &ChowContext,
) -> Result<BundleClass, BundleError> {
    let ra = a.roots_or_derive()?;
    let rb = b.roots_or_derive()?;
    let roots: Vec<RingElement> = ra
        .iter()
        .flat_map(|x| rb.iter().map(move |y| x + y))
        .collect();
    BundleClass::from_roots(roots, ctx)
}

/// `Sᵏ B` for `B` of rank 1 or 2.
pub fn sym(k: usize, b: &BundleClass, ctx: &ChowContext) -> Result<BundleClass, BundleError> {
    match b.rank {
        1 | 2 => {}
        r => return Err(BundleError::UnsupportedRank(r)),
    }
    let rs = b.roots_or_derive()?;
    let roots = if b.rank == 1 {
        vec![rs[0].scale_i64(k as i64)]
    } else {
        (0..=k)
            .rev()
            .map(|i| &rs[0].scale_i64(i as i64) + &rs[1].scale_i64((k - i) as i64))
            .collect()
    };
    BundleClass::from_roots(roots, ctx)
}

/// `∧² B = det B` for `B` of rank 2.
pub fn wedge2(b: &BundleClass) -> Result<BundleClass, BundleError> {
    if b.rank != 2 {
        return Err(BundleError::NotRankTwo(b.rank));
    }
    line(&b.chern.part(1))
}

/// Whitney sum: ranks add, total Chern classes multiply.
pub fn whitney(a: &BundleClass, b: &BundleClass) -> Result<BundleClass, BundleError> {
    let roots = match (&a.roots, &b.roots) {
        (Some(x), Some(y)) => Some(x.iter().chain(y).cloned().collect()),
        _ => None,
    };
    Ok(BundleClass {
        rank: a.rank + b.rank,
        chern: a.chern.try_mul(&b.chern)?,
        roots,
    })
}

/// Total Segre class `c(B)⁻¹`.
pub fn segre(b: &BundleClass) -> Result<RingElement, BundleError> {
    Ok(b.chern.invert_unit()?)
}

/// Bundle of `k`-th order principal parts `Pᵏ(E)`, assembled from the
/// filtration `0 → Sʲ Ω ⊗ E → Pʲ(E) → Pʲ⁻¹(E) → 0`.
pub fn jet(k: usize, e: &BundleClass, ctx: &ChowContext) -> Result<BundleClass, BundleError> {
    let omega = cotangent(ctx);
    let mut acc = e.clone();
    for j in 1..=k {
        let graded = tensor(&sym(j, &omega, ctx)?, e, ctx)?;
        acc = whitney(&acc, &graded)?;
    }
    Ok(acc)
}

/// Rank of `Pᵏ(E)` on a surface: `rank(E)·(k+1)(k+2)/2`.
pub fn jet_rank(k: usize, rank: usize) -> usize {
    let r: BigInt = binomial(BigInt::from(k + 2), BigInt::from(2usize)) * BigInt::from(rank);
    r.try_into().expect("jet rank fits in usize")
}

/// Whether the root list reproduces the Chern class; `None` without roots.
pub fn roots_consistent(b: &BundleClass, ctx: &ChowContext) -> Option<bool> {
    let roots = b.roots.as_ref()?;
    Some(roots.len() == b.rank && chern_from_roots(roots, ctx).is_ok_and(|c| c == b.chern))
}

/// `O(m·h)` for a scalar `m`.
pub fn hyperplane_line(ctx: &ChowContext, m: &RingElement) -> Result<BundleClass, BundleError> {
    line(&ctx.h().try_mul(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> ChowContext {
        ChowContext::p2()
    }

    fn omega_twist(ctx: &ChowContext, shift: i64) -> BundleClass {
        let m = &ctx.d() + &RingElement::from_i64(shift);
        twist(&cotangent(ctx), &hyperplane_line(ctx, &m).unwrap()).unwrap()
    }

    #[test]
    fn line_bundles() {
        let ctx = p2();
        let m = &ctx.d() + &RingElement::from_i64(2);
        let l = hyperplane_line(&ctx, &m).unwrap();
        assert_eq!(l.chern().to_string(), "1 + d*h + 2*h");
        assert_eq!(
            line(&RingElement::zero()).unwrap().chern(),
            &RingElement::one()
        );
        assert!(matches!(
            line(&(&ctx.h() * &ctx.h())),
            Err(BundleError::NotWeightOne(_))
        ));
        assert!(line(&RingElement::one()).is_err());
    }

    #[test]
    fn cotangent_on_p2() {
        let ctx = p2();
        let om = cotangent(&ctx);
        assert_eq!(om.chern().to_string(), "1 - 3*h + 3*h^2");
        assert!((&om.chern_class(1) + &dual(&om).chern_class(1)).is_zero());
        assert_eq!(dual(&om).chern_class(1), ctx.h().scale_i64(3));
    }

    #[test]
    fn twisted_cotangent_counts_singular_points() {
        let ctx = p2();
        let e = omega_twist(&ctx, 2);
        assert_eq!(e.chern_class(1).to_string(), "2*d*h + h");
        assert_eq!(
            ctx.integrate(&e.chern_class(2)).unwrap().to_string(),
            "d^2 + d + 1"
        );
    }

    #[test]
    fn dual_is_an_involution() {
        let ctx = p2();
        let e = omega_twist(&ctx, 2);
        assert_eq!(dual(&dual(&e)), e);
        let l = line(&ctx.h()).unwrap();
        assert_eq!(dual(&l), line(&ctx.h().scale_i64(-1)).unwrap());
    }

    #[test]
    fn twist_requires_a_line() {
        let ctx = p2();
        let om = cotangent(&ctx);
        assert_eq!(twist(&om, &om).unwrap_err(), BundleError::NotLine(2));
        assert_eq!(twist(&om, &BundleClass::trivial(1)).unwrap(), om);
    }

    #[test]
    fn tensor_examples() {
        let ctx = p2();
        let h = ctx.h();
        let x = line(&h).unwrap();
        let y = line(&h.scale_i64(-4)).unwrap();
        assert_eq!(
            tensor(&x, &y, &ctx).unwrap(),
            line(&h.scale_i64(-3)).unwrap()
        );
        let om = cotangent(&ctx);
        assert_eq!(tensor(&om, &BundleClass::trivial(1), &ctx).unwrap(), om);

        // S²Ω ⊗ O(d+2): roots 2a+m, a+b+m, 2b+m
        let s2 = sym(2, &om, &ctx).unwrap();
        let m = &ctx.d() + &RingElement::from_i64(2);
        let t = tensor(&s2, &hyperplane_line(&ctx, &m).unwrap(), &ctx).unwrap();
        assert_eq!(t.chern_class(1).to_string(), "3*d*h - 3*h");
        assert_eq!(t.chern_class(2).to_string(), "3*d^2*h^2 - 6*d*h^2 + 6*h^2");
    }

    #[test]
    fn tensor_needs_roots() {
        let ctx = p2();
        let bare = cotangent(&ctx).forget_roots();
        assert_eq!(
            tensor(&bare, &bare, &ctx).unwrap_err(),
            BundleError::RootsUnavailable(2)
        );
        // a rootless line still tensors
        let l = line(&ctx.h()).unwrap().forget_roots();
        assert!(tensor(&l, &cotangent(&ctx), &ctx).is_ok());
    }

    #[test]
    fn symmetric_powers() {
        let ctx = p2();
        let om = cotangent(&ctx);
        assert_eq!(sym(1, &om, &ctx).unwrap(), om);
        assert_eq!(sym(0, &om, &ctx).unwrap(), BundleClass::trivial(1));
        let s2 = sym(2, &om, &ctx).unwrap();
        assert_eq!(s2.rank(), 3);
        assert_eq!(s2.chern_class(1), ctx.h().scale_i64(-9));
        let three = whitney(&om, &BundleClass::trivial(1)).unwrap();
        assert_eq!(
            sym(2, &three, &ctx).unwrap_err(),
            BundleError::UnsupportedRank(3)
        );
        let l = line(&ctx.h()).unwrap();
        assert_eq!(
            sym(3, &l, &ctx).unwrap(),
            line(&ctx.h().scale_i64(3)).unwrap()
        );
    }

    #[test]
    fn determinant() {
        let ctx = p2();
        let om = cotangent(&ctx);
        assert_eq!(wedge2(&om).unwrap(), line(&ctx.h().scale_i64(-3)).unwrap());
        assert_eq!(
            wedge2(&dual(&om)).unwrap(),
            line(&ctx.h().scale_i64(3)).unwrap()
        );
        let e = omega_twist(&ctx, 2);
        assert_eq!(wedge2(&e).unwrap().chern_class(1), e.chern_class(1));
        assert_eq!(
            wedge2(&line(&ctx.h()).unwrap()).unwrap_err(),
            BundleError::NotRankTwo(1)
        );
    }

    #[test]
    fn whitney_sums() {
        let ctx = p2();
        let h = ctx.h();
        let om = cotangent(&ctx);
        assert_eq!(whitney(&om, &BundleClass::trivial(0)).unwrap(), om);
        let x = line(&h).unwrap();
        let y = line(&h.scale_i64(2)).unwrap();
        let s = whitney(&x, &y).unwrap();
        let one = RingElement::one();
        assert_eq!(*s.chern(), &(&one + &h) * &(&one + &h.scale_i64(2)));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn segre_classes() {
        let ctx = p2();
        let h = ctx.h();
        assert_eq!(segre(&BundleClass::trivial(3)).unwrap(), RingElement::one());
        let s = segre(&line(&h).unwrap()).unwrap();
        assert_eq!(s.to_string(), "1 - h + h^2");
        // c₁(Ω(d−1)) = −3h + 2(d−1)h = (2d−5)h, so s₁ = −(2d−5)h
        let e = omega_twist(&ctx, -1);
        assert_eq!(segre(&e).unwrap().part(1).to_string(), "-2*d*h + 5*h");
    }

    #[test]
    fn jets() {
        let ctx = p2();
        let e = omega_twist(&ctx, 2);
        assert_eq!(jet(0, &e, &ctx).unwrap(), e);
        for k in 1..=5usize {
            assert_eq!(jet(k - 1, &e, &ctx).unwrap().rank(), k * (k + 1));
            assert_eq!(jet_rank(k - 1, 2), k * (k + 1));
        }
        let p1 = jet(1, &e, &ctx).unwrap();
        assert_eq!(
            ctx.integrate(&p1.chern_class(2)).unwrap().to_string(),
            "15*d^2 - 15*d + 6"
        );
        // c(P¹(E)) = c(E)·c(Ω⊗E)
        let om_e = tensor(&cotangent(&ctx), &e, &ctx).unwrap();
        assert_eq!(*p1.chern(), e.chern() * om_e.chern());
    }

    #[test]
    fn roots_reproduce_chern() {
        let ctx = p2();
        let e = omega_twist(&ctx, 2);
        for b in [
            e.clone(),
            sym(3, &cotangent(&ctx), &ctx).unwrap(),
            jet(2, &e, &ctx).unwrap(),
            dual(&e),
        ] {
            assert_eq!(roots_consistent(&b, &ctx), Some(true));
        }
        assert_eq!(roots_consistent(&e.forget_roots(), &ctx), None);
    }
}
