//! Chow rings of surfaces: `P²` and an abstract polarized surface.
//!
//! Both rings carry a formal pair of Chern roots `a`, `b` of the cotangent
//! bundle Ω. Classes symmetric in the roots are rewritten through
//! `a + b = c₁(Ω)` and `ab = c₂(Ω)`. On `P²` those are `−3h` and `3h²`; on an
//! abstract surface they stay the free classes `c1`, `c2`.

use std::collections::BTreeMap;

use num_traits::Signed;
use thiserror::Error;

use crate::algebra::{
    symmetrize_in_roots, AlgebraError, CtxTag, Monomial, Rational, RingElement, Var,
};

const SURFACE_DIM: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no intersection number for monomial {0}; reduce the class first")]
    NoPairing(String),
    #[error("h² must be positive, got {0}")]
    NotAmple(String),
    #[error("relation for {0} is not idempotent")]
    RelationNotIdempotent(String),
}

/// The Chern numbers `∫h²`, `∫c₁h`, `∫c₁²`, `∫c₂` of a polarized surface,
/// with `cᵢ = cᵢ(Ω¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    pub h2: Rational,
    pub c1h: Rational,
    pub c1sq: Rational,
    pub c2: Rational,
}

impl IntersectionNumbers {
    pub fn new(
        h2: Rational,
        c1h: Rational,
        c1sq: Rational,
        c2: Rational,
    ) -> Result<Self, ChowError> {
        if !h2.is_positive() {
            return Err(ChowError::NotAmple(h2.to_string()));
        }
        Ok(IntersectionNumbers { h2, c1h, c1sq, c2 })
    }

    pub fn from_i64(h2: i64, c1h: i64, c1sq: i64, c2: i64) -> Result<Self, ChowError> {
        let q = |n: i64| Rational::from_integer(n.into());
        IntersectionNumbers::new(q(h2), q(c1h), q(c1sq), q(c2))
    }

    /// The plane with its hyperplane class: (1, −3, 9, 3).
    pub fn p2() -> Self {
        IntersectionNumbers::from_i64(1, -3, 9, 3).expect("h² = 1 is positive")
    }
}

/// The weight-0 symbols standing for unspecified Chern numbers.
#[derive(Clone, Debug)]
pub struct ChernNumberVars {
    pub h2: Var,
    pub c1h: Var,
    pub c1sq: Var,
    pub c2: Var,
}

impl ChernNumberVars {
    pub fn new() -> Self {
        ChernNumberVars {
            h2: Var::scalar("h2"),
            c1h: Var::scalar("c1h"),
            c1sq: Var::scalar("c1sq"),
            c2: Var::scalar("c2"),
        }
    }

    /// Substitutes concrete numbers into a symbolic degree.
    pub fn specialize(&self, x: &RingElement, nums: &IntersectionNumbers) -> RingElement {
        [
            (&self.h2, &nums.h2),
            (&self.c1h, &nums.c1h),
            (&self.c1sq, &nums.c1sq),
            (&self.c2, &nums.c2),
        ]
        .into_iter()
        .fold(x.clone(), |acc, (v, q)| {
            acc.substitute(v, &RingElement::constant(q.clone()))
                .expect("scalar substitution")
        })
    }
}

impl Default for ChernNumberVars {
    fn default() -> Self {
        ChernNumberVars::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Plane,
    Surface(Option<Box<IntersectionNumbers>>),
}

/// A graded ring presentation with an integration map to weight-0 scalars.
#[derive(Clone, Debug)]
pub struct ChowContext {
    tag: CtxTag,
    kind: Kind,
    vars: Vec<Var>,
    hyperplane: Var,
    param: Var,
    roots: (Var, Var),
    root_e1: RingElement,
    root_e2: RingElement,
    rules: Vec<(Monomial, RingElement)>,
    pairing: BTreeMap<Monomial, RingElement>,
}

impl ChowContext {
    /// `A(P²) = Q[h]/(h³)` with Ω split as roots `a + b = −3h`, `ab = 3h²`,
    /// read off the dual Euler sequence.
    pub fn p2() -> Self {
        let tag = CtxTag::new("P2", SURFACE_DIM);
        let h = Var::new("h", 1);
        let a = Var::new("a", 1);
        let b = Var::new("b", 1);
        let d = Var::scalar("d");
        let hh = RingElement::var(&tag, &h);
        let pairing = BTreeMap::from([(Monomial::pow(&h, 2), RingElement::one())]);
        ChowContext {
            root_e1: hh.scale_i64(-3),
            root_e2: (&hh * &hh).scale_i64(3),
            vars: vec![h.clone(), a.clone(), b.clone(), d.clone()],
            tag,
            kind: Kind::Plane,
            hyperplane: h,
            param: d,
            roots: (a, b),
            rules: Vec::new(),
            pairing,
        }
    }

    /// A smooth projective surface with ample class `h` and `cᵢ = cᵢ(Ω¹)`.
    /// Without `nums` the pairing is symbolic in `h2, c1h, c1sq, c2`.
    pub fn abstract_surface(nums: Option<IntersectionNumbers>) -> Self {
        let name = match &nums {
            None => "surface".to_string(),
            Some(n) => format!(
                "surface(h2={},c1h={},c1sq={},c2={})",
                n.h2, n.c1h, n.c1sq, n.c2
            ),
        };
        let tag = CtxTag::new(&name, SURFACE_DIM);
        let h = Var::new("h", 1);
        let c1 = Var::new("c1", 1);
        let c2 = Var::new("c2", 2);
        let a = Var::new("a", 1);
        let b = Var::new("b", 1);
        let d = Var::scalar("d");

        let symbols = ChernNumberVars::new();
        let value = |q: Option<&Rational>, v: &Var| match q {
            Some(q) => RingElement::constant(q.clone()),
            None => RingElement::scalar_var(v),
        };
        let pairing = BTreeMap::from([
            (
                Monomial::pow(&h, 2),
                value(nums.as_ref().map(|n| &n.h2), &symbols.h2),
            ),
            (
                Monomial::from_pairs([(&c1, 1), (&h, 1)]),
                value(nums.as_ref().map(|n| &n.c1h), &symbols.c1h),
            ),
            (
                Monomial::pow(&c1, 2),
                value(nums.as_ref().map(|n| &n.c1sq), &symbols.c1sq),
            ),
            (
                Monomial::var(&c2),
                value(nums.as_ref().map(|n| &n.c2), &symbols.c2),
            ),
        ]);
        ChowContext {
            root_e1: RingElement::var(&tag, &c1),
            root_e2: RingElement::var(&tag, &c2),
            vars: vec![h.clone(), c1, c2, a.clone(), b.clone(), d.clone()],
            tag,
            kind: Kind::Surface(nums.map(Box::new)),
            hyperplane: h,
            param: d,
            roots: (a, b),
            rules: Vec::new(),
            pairing,
        }
    }

    /// Adds a substitution rule `m → value`. The value may not itself contain
    /// an eliminated monomial, which keeps reduction idempotent.
    pub fn with_rule(mut self, m: Monomial, value: RingElement) -> Result<Self, ChowError> {
        let mut eliminated: Vec<&Monomial> = self.rules.iter().map(|(m, _)| m).collect();
        eliminated.push(&m);
        let hits = |x: &RingElement| {
            x.terms()
                .any(|(t, _)| eliminated.iter().any(|e| t.div(e).is_some()))
        };
        if hits(&value) || self.rules.iter().any(|(_, v)| hits(v)) {
            return Err(ChowError::RelationNotIdempotent(m.to_string()));
        }
        let value = value.in_context(&self.tag)?;
        self.pairing.remove(&m);
        self.rules.push((m, value));
        Ok(self)
    }

    pub fn tag(&self) -> &CtxTag {
        &self.tag
    }

    pub fn name(&self) -> &str {
        self.tag.name()
    }

    pub fn is_plane(&self) -> bool {
        self.kind == Kind::Plane
    }

    /// The fixed intersection numbers, if any (always present for `P²`).
    pub fn intersection_numbers(&self) -> Option<IntersectionNumbers> {
        match &self.kind {
            Kind::Plane => Some(IntersectionNumbers::p2()),
            Kind::Surface(n) => n.as_deref().cloned(),
        }
    }

    pub fn truncation_bound(&self) -> u32 {
        self.tag.bound()
    }

    pub fn variables(&self) -> &[Var] {
        &self.vars
    }

    pub fn lookup(&self, name: &str) -> Option<RingElement> {
        let v = self.vars.iter().find(|v| v.name() == name)?;
        Some(if v.weight() == 0 {
            RingElement::scalar_var(v)
        } else {
            RingElement::var(&self.tag, v)
        })
    }

    pub fn h(&self) -> RingElement {
        RingElement::var(&self.tag, &self.hyperplane)
    }

    pub fn hyperplane_var(&self) -> &Var {
        &self.hyperplane
    }

    /// The foliation degree `d`, a free weight-0 parameter.
    pub fn d(&self) -> RingElement {
        RingElement::scalar_var(&self.param)
    }

    pub fn param_var(&self) -> &Var {
        &self.param
    }

    pub fn root_vars(&self) -> (&Var, &Var) {
        (&self.roots.0, &self.roots.1)
    }

    pub fn roots(&self) -> (RingElement, RingElement) {
        (
            RingElement::var(&self.tag, &self.roots.0),
            RingElement::var(&self.tag, &self.roots.1),
        )
    }

    /// `c₁(Ω)`.
    pub fn omega_c1(&self) -> &RingElement {
        &self.root_e1
    }

    /// `c₂(Ω)`.
    pub fn omega_c2(&self) -> &RingElement {
        &self.root_e2
    }

    /// Applies the substitution rules until none matches, then truncates.
    pub fn reduce(&self, x: &RingElement) -> Result<RingElement, ChowError> {
        let mut cur = x.in_context(&self.tag)?;
        if self.rules.is_empty() {
            return Ok(cur);
        }
        loop {
            let mut changed = false;
            let mut next = RingElement::zero();
            for (m, c) in cur.terms() {
                let hit = self
                    .rules
                    .iter()
                    .find_map(|(e, v)| m.div(e).map(|q| (q, v)));
                let term = RingElement::monomial(&self.tag, m.clone(), c.clone());
                next = match hit {
                    Some((q, v)) => {
                        changed = true;
                        let cof = RingElement::monomial(&self.tag, q, c.clone());
                        next.try_add(&cof.try_mul(v)?)?
                    }
                    None => next.try_add(&term)?,
                };
            }
            cur = next;
            if !changed {
                return Ok(cur);
            }
        }
    }

    /// Eliminates the Chern roots from a root-symmetric class.
    pub fn symmetrize(&self, x: &RingElement) -> Result<RingElement, ChowError> {
        let x = x.in_context(&self.tag)?;
        let s = symmetrize_in_roots(
            &x,
            &self.roots.0,
            &self.roots.1,
            &self.root_e1,
            &self.root_e2,
        )?;
        self.reduce(&s)
    }

    /// Degree map: pairs each top-weight monomial with its intersection
    /// number; lower-weight parts integrate to zero.
    pub fn integrate(&self, x: &RingElement) -> Result<RingElement, ChowError> {
        let x = x.in_context(&self.tag)?;
        let mut out = RingElement::zero();
        for (m, c) in x.terms() {
            let (scalar, class) = m.split_scalar();
            if class.weight() != self.truncation_bound() {
                continue;
            }
            let number = self
                .pairing
                .get(&class)
                .ok_or_else(|| ChowError::NoPairing(class.to_string()))?;
            let coef = RingElement::from_terms(None, [(scalar, c.clone())]);
            out = &out + &(&coef * number);
        }
        Ok(out)
    }

    /// The surviving top-weight monomials with their intersection numbers.
    pub fn pairing(&self) -> &BTreeMap<Monomial, RingElement> {
        &self.pairing
    }

    /// Every monomial of weight exactly `w` in the class variables that are
    /// not Chern roots and not eliminated by a rule.
    pub fn surviving_monomials(&self, w: u32) -> Vec<Monomial> {
        let class_vars: Vec<&Var> = self
            .vars
            .iter()
            .filter(|v| v.weight() > 0 && **v != self.roots.0 && **v != self.roots.1)
            .collect();
        let mut out = vec![(Monomial::one(), 0u32)];
        for v in &class_vars {
            let mut next = Vec::new();
            for (m, wt) in &out {
                let mut e = 0;
                while wt + e * v.weight() <= w {
                    next.push((m.mul(&Monomial::pow(v, e)), wt + e * v.weight()));
                    e += 1;
                }
            }
            out = next;
        }
        out.into_iter()
            .filter(|(m, wt)| *wt == w && !self.rules.iter().any(|(e, _)| m.div(e).is_some()))
            .map(|(m, _)| m)
            .collect()
    }
}

/// Substitutes concrete Chern numbers into a symbolic surface degree.
pub fn specialize_to(x: &RingElement, nums: &IntersectionNumbers) -> RingElement {
    ChernNumberVars::new().specialize(x, nums)
}

impl PartialEq for ChowContext {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.kind == other.kind
    }
}
