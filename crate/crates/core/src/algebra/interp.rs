use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, Monomial, Rational, RingElement, Var};

/// A polynomial in one weight-0 variable whose coefficients are ring elements.
/// `coeffs[i]` multiplies `var^i`; trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    var: Var,
    coeffs: Vec<RingElement>,
}

impl UnivariatePoly {
    pub fn new(var: Var, mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(RingElement::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { var, coeffs }
    }

    /// Collects `x` by powers of `var`.
    pub fn from_element(x: &RingElement, var: &Var) -> Self {
        let mut coeffs: Vec<RingElement> = Vec::new();
        for (m, c) in x.terms() {
            let (e, rest) = m.extract(var);
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, RingElement::zero());
            }
            let term = match x.tag() {
                Some(tag) => RingElement::monomial(tag, rest, c.clone()),
                None => RingElement::from_terms(None, [(rest, c.clone())]),
            };
            coeffs[e] = &coeffs[e] + &term;
        }
        UnivariatePoly::new(var.clone(), coeffs)
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of `var^i` (zero past the end).
    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(RingElement::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> RingElement {
        let x = RingElement::from_i64(x);
        self.coeffs
            .iter()
            .rev()
            .fold(RingElement::zero(), |acc, c| &(&acc * &x) + c)
    }

    pub fn to_element(&self) -> RingElement {
        let mut out = RingElement::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = RingElement::from_terms(
                None,
                [(Monomial::pow(&self.var, i as u32), Rational::one())],
            );
            out = &out + &(c * &p);
        }
        out
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

/// Lagrange interpolation through `points`, exact over the rationals.
pub fn interpolate_univariate(
    points: &[(i64, RingElement)],
    var: Var,
) -> Result<UnivariatePoly, AlgebraError> {
    if points.len() < 2 {
        return Err(AlgebraError::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(AlgebraError::DuplicateAbscissa(*x));
        }
    }

    let n = points.len();
    let mut coeffs = vec![RingElement::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator Π_{j≠i} (X − x_j), ascending coefficients
        let mut basis: Vec<Rational> = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = Rational::from_integer(BigInt::from(*xj));
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (t, b) in basis.iter().enumerate() {
                next[t + 1] += b;
                next[t] -= b * &xj;
            }
            basis = next;
            denom *= Rational::from_integer(BigInt::from(*xi)) - xj;
        }
        for (t, b) in basis.iter().enumerate() {
            let w = b / &denom;
            if !w.is_zero() {
                coeffs[t] = &coeffs[t] + &yi.scale(&w);
            }
        }
    }
    Ok(UnivariatePoly::new(var, coeffs))
}
