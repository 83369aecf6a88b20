//! Bivariate degree polynomials in `(k, d)` recovered by exact interpolation
//! over concrete `k`.

use crate::algebra::{interpolate_univariate, RingElement, UnivariatePoly, Var};
use crate::chow::ChowContext;
use crate::exec::Exec;

use super::{
    closed_form_c, closed_form_d, closed_form_m, locus_report, DReading, LociError, Locus,
};

/// Number of sample values of `k` that pin down the degree polynomial: its
/// degree in `k` plus one (6 for `M` and `D`, 7 for `C`).
pub fn required_points(locus: Locus) -> usize {
    match locus {
        Locus::M | Locus::D => 7,
        Locus::C => 8,
    }
}

/// Coefficientwise comparison of the interpolant with one closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadingMatch {
    pub label: &'static str,
    pub expected: UnivariatePoly,
    /// Powers of `k` whose coefficients disagree.
    pub mismatched_powers: Vec<usize>,
}

impl ReadingMatch {
    pub fn matches(&self) -> bool {
        self.mismatched_powers.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Recovery {
    pub locus: Locus,
    pub ks: Vec<usize>,
    /// Degree as a polynomial in `k` with coefficients in `d`.
    pub poly: UnivariatePoly,
    /// Empty off `P²`, where no closed form is available.
    pub comparisons: Vec<ReadingMatch>,
}

impl Recovery {
    /// Labels of the closed forms that agree coefficient by coefficient.
    pub fn matching(&self) -> Vec<&'static str> {
        self.comparisons
            .iter()
            .filter(|c| c.matches())
            .map(|c| c.label)
            .collect()
    }
}

pub fn k_var() -> Var {
    Var::scalar("k")
}

/// Interpolates the pipeline degrees at `ks` and compares the result with the
/// closed forms expanded symbolically in `k`.
pub fn recover_bivariate(
    ctx: &ChowContext,
    locus: Locus,
    ks: &[usize],
    exec: Exec,
) -> Result<Recovery, LociError> {
    let needed = required_points(locus);
    if ks.len() < needed {
        return Err(LociError::InsufficientPoints {
            locus,
            needed,
            got: ks.len(),
        });
    }
    let degrees = exec.map(ks.to_vec(), |k| {
        locus_report(ctx, locus, k).map(|r| (k as i64, r.degree))
    });
    let points: Vec<(i64, RingElement)> = degrees.into_iter().collect::<Result<_, _>>()?;
    let poly = interpolate_univariate(&points, k_var())?;

    let mut comparisons = Vec::new();
    if ctx.is_plane() {
        let k = RingElement::scalar_var(&k_var());
        let d = ctx.d();
        let forms: Vec<(&'static str, RingElement)> = match locus {
            Locus::M => vec![("closed form", closed_form_m(&k, &d))],
            Locus::C => vec![("closed form", closed_form_c(&k, &d))],
            Locus::D => DReading::ALL
                .iter()
                .map(|r| (r.label(), closed_form_d(&k, &d, *r)))
                .collect(),
        };
        for (label, form) in forms {
            let expected = UnivariatePoly::from_element(&form, &k_var());
            let len = expected.coeffs().len().max(poly.coeffs().len());
            let mismatched_powers = (0..len)
                .filter(|&i| expected.coeff(i) != poly.coeff(i))
                .collect();
            comparisons.push(ReadingMatch {
                label,
                expected,
                mismatched_powers,
            });
        }
    }
    Ok(Recovery {
        locus,
        ks: ks.to_vec(),
        poly,
        comparisons,
    })
}
