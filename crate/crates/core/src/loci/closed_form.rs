//! Closed forms for the locus degrees and for the cycle-class
//! coefficients `(u, v, w)`. Both `k` and `d` are scalars, so these evaluate
//! at concrete integers or stay symbolic in either variable.

use crate::algebra::RingElement;

/// Which version of the `D_k` degree formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DReading {
    /// `d²` term carries the factor `(k+1)²` twice.
    AsPrinted,
    /// Inner `(k+1)²` on the `d²` term dropped.
    Corrected,
}

impl DReading {
    pub const ALL: [DReading; 2] = [DReading::AsPrinted, DReading::Corrected];

    pub fn label(self) -> &'static str {
        match self {
            DReading::AsPrinted => "as-printed",
            DReading::Corrected => "corrected",
        }
    }
}

/// Σ cᵢ kⁱ with integer coefficients, ascending.
fn poly(k: &RingElement, coeffs: &[i64]) -> RingElement {
    coeffs.iter().rev().fold(RingElement::zero(), |acc, &c| {
        &(&acc * k) + &RingElement::from_i64(c)
    })
}

fn q(num: i64, den: i64) -> RingElement {
    RingElement::from_ratio(num, den)
}

/// `½k(k+1)[(k²+k−1)(d² − (2k−3)d) + ¼(4k⁴ − 8k³ − 7k² + 21k − 6)]`
pub fn closed_form_m(k: &RingElement, d: &RingElement) -> RingElement {
    let lead = &(&q(1, 2) * k) * &poly(k, &[1, 1]);
    let d_part = &(d * d) - &(&poly(k, &[-3, 2]) * d);
    let inner = &(&poly(k, &[-1, 1, 1]) * &d_part) + &(&q(1, 4) * &poly(k, &[-6, 21, -7, -8, 4]));
    &lead * &inner
}

/// `(k+1)²[½(k⁴+k²−2k+2) − (k³+k²+k−1)d + ½(k²+2k+2)·X·d²]` with
/// `X = (k+1)²` as printed and `X = 1` corrected.
pub fn closed_form_d(k: &RingElement, d: &RingElement, reading: DReading) -> RingElement {
    let kp1_sq = poly(k, &[1, 2, 1]);
    let extra = match reading {
        DReading::AsPrinted => kp1_sq.clone(),
        DReading::Corrected => RingElement::one(),
    };
    let c0 = &q(1, 2) * &poly(k, &[2, -2, 1, 0, 1]);
    let c1 = &poly(k, &[-1, 1, 1, 1]) * d;
    let c2 = &(&(&q(1, 2) * &poly(k, &[2, 2, 1])) * &extra) * &(d * d);
    &kp1_sq * &(&(&c0 - &c1) + &c2)
}

/// `(k−1)·½[¼(4k⁶+20k⁵−15k⁴−66k³+211k²−218k+112)
///   − (2k⁵+7k⁴+2k³+24k²−49k+44)d + (k⁴+2k³+10k²+k+16)d²]`
pub fn closed_form_c(k: &RingElement, d: &RingElement) -> RingElement {
    let c0 = &q(1, 4) * &poly(k, &[112, -218, 211, -66, -15, 20, 4]);
    let c1 = &poly(k, &[44, -49, 24, 2, 7, 2]) * d;
    let c2 = &poly(k, &[16, 1, 10, 2, 1]) * &(d * d);
    &(&q(1, 2) * &poly(k, &[-1, 1])) * &(&(&c0 - &c1) + &c2)
}

/// Closed forms for `(u, v, w)`:
/// `u = k−1`, `v = −½(k−1)(k−2)(3k+2d−5)`,
/// `w = ⅛(k−2)(k−1)²(9k² − 47k + 12kd − 60d + 72 + 12d²)`.
pub fn closed_form_vk(k: &RingElement, d: &RingElement) -> (RingElement, RingElement, RingElement) {
    let km1 = poly(k, &[-1, 1]);
    let km2 = poly(k, &[-2, 1]);
    let u = km1.clone();
    let v = &(&(&q(-1, 2) * &km1) * &km2) * &(&poly(k, &[-5, 3]) + &d.scale_i64(2));
    let w_inner = &(&poly(k, &[72, -47, 9]) + &(&poly(k, &[-60, 12]) * d)) + &(d * d).scale_i64(12);
    let w = &(&(&(&q(1, 8) * &km2) * &km1) * &km1) * &w_inner;
    (u, v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn d() -> RingElement {
        RingElement::scalar_var(&Var::scalar("d"))
    }

    fn k(n: i64) -> RingElement {
        RingElement::from_i64(n)
    }

    #[test]
    fn m_substitutions() {
        assert_eq!(closed_form_m(&k(1), &d()).to_string(), "d^2 + d + 1");
        assert_eq!(closed_form_m(&k(2), &d()).to_string(), "15*d^2 - 15*d + 6");
        assert_eq!(
            closed_form_m(&k(3), &d()).to_string(),
            "66*d^2 - 198*d + 153"
        );
    }

    #[test]
    fn d_readings() {
        assert_eq!(
            closed_form_d(&k(1), &d(), DReading::AsPrinted).to_string(),
            "40*d^2 - 8*d + 4"
        );
        assert_eq!(
            closed_form_d(&k(1), &d(), DReading::Corrected).to_string(),
            "10*d^2 - 8*d + 4"
        );
        assert_eq!(
            closed_form_d(&k(2), &d(), DReading::Corrected).to_string(),
            "45*d^2 - 117*d + 81"
        );
    }

    #[test]
    fn c_substitutions() {
        assert!(closed_form_c(&k(1), &d()).is_zero());
        assert_eq!(
            closed_form_c(&k(2), &d()).to_string(),
            "45*d^2 - 117*d + 81"
        );
        assert_eq!(
            closed_form_c(&k(3), &d()).to_string(),
            "244*d^2 - 1220*d + 1534"
        );
    }

    #[test]
    fn vk_substitutions() {
        let (u, v, w) = closed_form_vk(&k(2), &d());
        assert_eq!((u, v.is_zero(), w.is_zero()), (k(1), true, true));
        let (u, v, w) = closed_form_vk(&k(3), &d());
        assert_eq!(u, k(2));
        assert_eq!(v.to_string(), "-2*d - 4");
        assert_eq!(w.to_string(), "6*d^2 - 12*d + 6");
    }

    #[test]
    fn symbolic_k() {
        let kv = RingElement::scalar_var(&Var::scalar("k"));
        let m = closed_form_m(&kv, &d());
        assert_eq!(
            m.substitute_i64(&Var::scalar("k"), 3),
            closed_form_m(&k(3), &d())
        );
    }
}
