use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, Monomial, Rational, RingElement, Var};

type RootPoly = BTreeMap<(u32, u32), Rational>;

/// Rewrites an element symmetric in the roots `a`, `b` through the elementary
/// symmetric functions and substitutes `e1 = a + b`, `e2 = a·b`.
///
/// Terms are grouped by their root-free cofactor; each group is reduced by the
/// usual leading-term elimination.
pub fn symmetrize_in_roots(
    x: &RingElement,
    a: &Var,
    b: &Var,
    e1: &RingElement,
    e2: &RingElement,
) -> Result<RingElement, AlgebraError> {
    let mut groups: BTreeMap<Monomial, RootPoly> = BTreeMap::new();
    for (m, c) in x.terms() {
        let (ea, rest) = m.extract(a);
        let (eb, rest) = rest.extract(b);
        groups.entry(rest).or_default().insert((ea, eb), c.clone());
    }

    let not_symmetric = || AlgebraError::NotSymmetric {
        a: a.name().into(),
        b: b.name().into(),
    };
    let mut e1_pows = vec![RingElement::one()];
    let mut e2_pows = vec![RingElement::one()];
    let mut out = RingElement::zero();

    for (rest, mut poly) in groups {
        let swapped: RootPoly = poly
            .iter()
            .map(|(&(i, j), c)| ((j, i), c.clone()))
            .collect();
        if swapped != poly {
            return Err(not_symmetric());
        }
        let mut reduced = RingElement::zero();
        while let Some((&(i, j), c)) = poly.iter().next_back() {
            let c = c.clone();
            if i < j {
                return Err(not_symmetric());
            }
            subtract_elementary(&mut poly, i - j, j, &c);
            let (p, q) = ((i - j) as usize, j as usize);
            while e1_pows.len() <= p {
                let next = e1_pows.last().expect("nonempty").try_mul(e1)?;
                e1_pows.push(next);
            }
            while e2_pows.len() <= q {
                let next = e2_pows.last().expect("nonempty").try_mul(e2)?;
                e2_pows.push(next);
            }
            reduced = reduced.try_add(&e1_pows[p].try_mul(&e2_pows[q])?.scale(&c))?;
        }
        let cofactor = match x.tag() {
            Some(tag) => RingElement::monomial(tag, rest, Rational::one()),
            None => RingElement::from_terms(None, [(rest, Rational::one())]),
        };
        out = out.try_add(&cofactor.try_mul(&reduced)?)?;
    }
    Ok(out)
}

/// poly -= c · (a+b)^p · (ab)^q
fn subtract_elementary(poly: &mut RootPoly, p: u32, q: u32, c: &Rational) {
    let mut binom = BigInt::one();
    for t in 0..=p {
        let key = (t + q, p - t + q);
        let delta = c * Rational::from_integer(binom.clone());
        let entry = poly.entry(key).or_insert_with(Rational::zero);
        *entry -= delta;
        if entry.is_zero() {
            poly.remove(&key);
        }
        binom = binom * BigInt::from(p - t) / BigInt::from(t + 1);
    }
}
