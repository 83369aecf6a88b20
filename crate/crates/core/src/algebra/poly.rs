//! Weighted multivariate polynomials with exact rational coefficients,
//! truncated above the weight bound of their ambient context.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Rational};

/// A polynomial variable. The weight is part of its identity, so a weight-0
/// Chern number `c2` and the weight-2 class `c2` never collide.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    name: Arc<str>,
    weight: u32,
}

impl Var {
    pub fn new(name: &str, weight: u32) -> Self {
        Var {
            name: Arc::from(name),
            weight,
        }
    }

    /// A weight-0 parameter such as `d` or `k`.
    pub fn scalar(name: &str) -> Self {
        Var::new(name, 0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Power product of variables. Variables with exponent 0 are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: &Var) -> Self {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: &Var, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v.clone(), e);
        }
        Monomial(m)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a Var, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::pow(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    /// Σ exponent · weight.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.weight * e).sum()
    }

    /// Total exponent degree, ignoring weights.
    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            let have = out.get(v).copied().unwrap_or(0);
            if have < *e {
                return None;
            }
            if have == *e {
                out.remove(v);
            } else {
                out.insert(v.clone(), have - e);
            }
        }
        Some(Monomial(out))
    }

    /// Splits into (weight-0 part, positive-weight part).
    pub fn split_scalar(&self) -> (Monomial, Monomial) {
        let mut scalar = BTreeMap::new();
        let mut class = BTreeMap::new();
        for (v, e) in &self.0 {
            if v.weight == 0 {
                scalar.insert(v.clone(), *e);
            } else {
                class.insert(v.clone(), *e);
            }
        }
        (Monomial(scalar), Monomial(class))
    }

    /// Removes `v` and returns its exponent alongside the rest.
    pub fn extract(&self, v: &Var) -> (u32, Monomial) {
        let mut rest = self.0.clone();
        let e = rest.remove(v).unwrap_or(0);
        (e, Monomial(rest))
    }

    /// Graded lexicographic comparison: higher total degree first, then the
    /// larger exponent in the alphabetically earliest variable first.
    fn grlex_desc(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let mut vars: Vec<&Var> = self.0.keys().chain(other.0.keys()).collect();
            vars.sort();
            vars.dedup();
            for v in vars {
                match other.exponent(v).cmp(&self.exponent(v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Identifies the ring an element lives in and its truncation bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CtxTag {
    name: Arc<str>,
    bound: u32,
}

impl CtxTag {
    pub fn new(name: &str, bound: u32) -> Self {
        CtxTag {
            name: Arc::from(name),
            bound,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }
}

/// An element of a truncated graded ring.
///
/// Elements made only of weight-0 terms ("scalars", e.g. polynomials in `d`)
/// carry no context tag and combine freely with elements of any context.
/// Elements with positive-weight terms are tagged, and combining two
/// differently tagged elements is an error.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
    tag: Option<CtxTag>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement {
            terms: BTreeMap::new(),
            tag: None,
        }
    }

    pub fn one() -> Self {
        RingElement::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        RingElement::from_terms(None, [(Monomial::one(), q)])
    }

    pub fn from_i64(n: i64) -> Self {
        RingElement::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        RingElement::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// A weight-0 variable as a context-free scalar.
    pub fn scalar_var(v: &Var) -> Self {
        assert_eq!(v.weight(), 0, "scalar_var needs a weight-0 variable");
        RingElement::from_terms(None, [(Monomial::var(v), Rational::one())])
    }

    /// `coef · m` inside the ring identified by `tag`.
    pub fn monomial(tag: &CtxTag, m: Monomial, coef: Rational) -> Self {
        RingElement::from_terms(Some(tag.clone()), [(m, coef)])
    }

    pub fn var(tag: &CtxTag, v: &Var) -> Self {
        RingElement::monomial(tag, Monomial::var(v), Rational::one())
    }

    /// Builds an element from raw terms, dropping zeros and anything above the
    /// tag's bound.
    pub fn from_terms(
        tag: Option<CtxTag>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if let Some(t) = &tag {
                if m.weight() > t.bound {
                    continue;
                }
            }
            accumulate(&mut map, m, c);
        }
        let mut out = RingElement { terms: map, tag };
        out.normalize_tag();
        out
    }

    fn normalize_tag(&mut self) {
        if self.terms.keys().all(|m| m.weight() == 0) {
            self.tag = None;
        } else {
            assert!(
                self.tag.is_some(),
                "positive-weight terms require a context"
            );
        }
    }

    pub fn tag(&self) -> Option<&CtxTag> {
        self.tag.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.tag.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The largest weight of any term, `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    /// True when every term has weight exactly `w` (zero qualifies).
    pub fn is_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    /// The weight-`w` homogeneous part.
    pub fn part(&self, w: u32) -> RingElement {
        RingElement::from_terms(
            self.tag.clone(),
            self.terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// The constant if this element is a bare rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// True when all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Variables occurring in any term.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn combined_tag(&self, other: &RingElement) -> Result<Option<CtxTag>, AlgebraError> {
        match (&self.tag, &other.tag) {
            (None, t) | (t, None) => Ok(t.clone()),
            (Some(a), Some(b)) if a == b => Ok(Some(a.clone())),
            (Some(a), Some(b)) => Err(AlgebraError::ContextMismatch {
                left: a.name().to_string(),
                right: b.name().to_string(),
            }),
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, AlgebraError> {
        let tag = self.combined_tag(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        let mut out = RingElement { terms, tag };
        out.normalize_tag();
        Ok(out)
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, AlgebraError> {
        self.try_add(&other.neg_ref())
    }

    /// Exact product, discarding every monomial above the weight bound.
    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, AlgebraError> {
        let tag = self.combined_tag(other)?;
        let bound = tag.as_ref().map(CtxTag::bound);
        let rhs: Vec<(&Monomial, &Rational, u32)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, m.weight()))
            .collect();
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            let w1 = m1.weight();
            for (m2, c2, w2) in &rhs {
                if bound.is_some_and(|b| w1 + w2 > b) {
                    continue;
                }
                accumulate(&mut terms, m1.mul(m2), c1 * *c2);
            }
        }
        let mut out = RingElement { terms, tag };
        out.normalize_tag();
        Ok(out)
    }

    pub fn try_pow(&self, e: u32) -> Result<RingElement, AlgebraError> {
        let mut acc = RingElement::one();
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Rational) -> RingElement {
        if q.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
            tag: self.tag.clone(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> RingElement {
        self.scale(&Rational::from_integer(BigInt::from(n)))
    }

    fn neg_ref(&self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            tag: self.tag.clone(),
        }
    }

    /// Inverse of a unit `c + n` with `c` a nonzero rational and `n`
    /// nilpotent, via `c⁻¹(1 − n/c + (n/c)² − …)` which stops at the weight bound.
    pub fn invert_unit(&self) -> Result<RingElement, AlgebraError> {
        let c = match self.part(0).as_rational() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(AlgebraError::NotUnit(self.part(0).to_string())),
        };
        let c_inv = c.recip();
        let n = self.try_sub(&RingElement::constant(c))?.scale(&c_inv);
        let bound = self.tag.as_ref().map_or(0, CtxTag::bound);
        let mut result = RingElement::one();
        let mut power = RingElement::one();
        for i in 1..=bound {
            power = power.try_mul(&n)?;
            if power.is_zero() {
                break;
            }
            result = if i % 2 == 1 {
                result.try_sub(&power)?
            } else {
                result.try_add(&power)?
            };
        }
        Ok(result.scale(&c_inv))
    }

    /// Coefficient of `m`: Σ c·(t/m) over terms `c·t` with `m | t` and `t/m`
    /// of weight 0.
    pub fn coefficient_of(&self, m: &Monomial) -> RingElement {
        RingElement::from_terms(
            None,
            self.terms
                .iter()
                .filter_map(|(t, c)| t.div(m).filter(|q| q.weight() == 0).map(|q| (q, c.clone()))),
        )
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: &Var, value: &RingElement) -> Result<RingElement, AlgebraError> {
        let mut out = RingElement {
            terms: BTreeMap::new(),
            tag: self.tag.clone(),
        };
        let mut powers: Vec<RingElement> = vec![RingElement::one()];
        for (m, c) in &self.terms {
            let (e, rest) = m.extract(v);
            while powers.len() <= e as usize {
                let next = powers.last().expect("nonempty").try_mul(value)?;
                powers.push(next);
            }
            let rest = RingElement {
                terms: BTreeMap::from([(rest, c.clone())]),
                tag: self.tag.clone(),
            };
            out = out.try_add(&rest.try_mul(&powers[e as usize])?)?;
        }
        out.normalize_tag();
        Ok(out)
    }

    /// Substitutes an integer for a weight-0 variable.
    pub fn substitute_i64(&self, v: &Var, value: i64) -> RingElement {
        self.substitute(v, &RingElement::from_i64(value))
            .expect("scalar substitution cannot mismatch")
    }

    /// Moves a context-free element into `tag`'s ring; tagged elements must
    /// already belong to it.
    pub fn in_context(&self, tag: &CtxTag) -> Result<RingElement, AlgebraError> {
        match &self.tag {
            Some(t) if t != tag => Err(AlgebraError::ContextMismatch {
                left: t.name().into(),
                right: tag.name().into(),
            }),
            _ => Ok(RingElement::from_terms(
                Some(tag.clone()),
                self.terms.clone(),
            )),
        }
    }

    /// Terms in printing order: ascending weight, then graded lex descending.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| a.weight().cmp(&b.weight()).then_with(|| a.grlex_desc(b)));
        ts
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<i64> for RingElement {
    fn from(n: i64) -> Self {
        RingElement::from_i64(n)
    }
}

// Operator sugar for code that already guarantees a shared context.
// Mixing contexts through these panics; use the `try_*` methods otherwise.

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring addition across contexts")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring subtraction across contexts")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs)
            .expect("ring multiplication across contexts")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}
