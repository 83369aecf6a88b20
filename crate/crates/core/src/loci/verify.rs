//! Cross-validation of the pipeline against the closed forms and against
//! itself (surface generality, `C₂ = D₂`, codimension bookkeeping).

use serde::Serialize;

use crate::algebra::RingElement;
use crate::bundle;
use crate::chow::{specialize_to, ChowContext, IntersectionNumbers};
use crate::exec::Exec;

use super::{
    closed_form_c, closed_form_d, closed_form_m, closed_form_vk, deg_c, deg_d, deg_m,
    general_surface_deg_d, general_surface_deg_m, positive_on, recover_bivariate,
    singular_point_count, twisted_cotangent, vk_bundles_match_plane_twist, vk_coeffs, DReading,
    LociError, Locus, LocusReport, VkCoefficients,
};

/// Largest `d` used for positivity spot checks.
const POSITIVITY_D_MAX: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A known, expected discrepancy that is reported rather than hidden.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub k: i64,
    pub expected: String,
    pub got: String,
    pub status: CheckStatus,
    /// `expected − got` for polynomial mismatches.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub k_max: usize,
    pub entries: Vec<CheckEntry>,
    /// The `D_k` reading that matched the pipeline for every `k`, if exactly
    /// one did.
    pub d_reading: Option<DReading>,
}

impl VerificationReport {
    /// True when no entry failed. Flagged entries do not count as failures.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn find(&self, check: &str, k: i64) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check == check && e.k == k)
    }
}

struct Builder {
    entries: Vec<CheckEntry>,
}

impl Builder {
    fn push(&mut self, check: &str, k: i64, expected: String, got: String, ok: bool) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.entries.push(CheckEntry {
            check: check.into(),
            k,
            expected,
            got,
            status,
            delta: None,
        });
    }

    fn poly(
        &mut self,
        check: &str,
        k: i64,
        expected: &RingElement,
        got: &Result<RingElement, LociError>,
    ) {
        self.poly_with(check, k, expected, got, CheckStatus::Fail);
    }

    /// Records a polynomial comparison; a mismatch gets `on_mismatch`.
    fn poly_with(
        &mut self,
        check: &str,
        k: i64,
        expected: &RingElement,
        got: &Result<RingElement, LociError>,
        on_mismatch: CheckStatus,
    ) {
        let (got_s, status, delta) = match got {
            Ok(g) if g == expected => (g.to_string(), CheckStatus::Pass, None),
            Ok(g) => (g.to_string(), on_mismatch, Some((expected - g).to_string())),
            Err(e) => (format!("error: {e}"), CheckStatus::Fail, None),
        };
        self.entries.push(CheckEntry {
            check: check.into(),
            k,
            expected: expected.to_string(),
            got: got_s,
            status,
            delta,
        });
    }

    fn error(&mut self, check: &str, k: i64, expected: String, e: &LociError) {
        self.push(check, k, expected, format!("error: {e}"), false);
    }
}

/// Everything computed for one `k`; independent across `k`.
struct PerK {
    k: usize,
    m: Result<LocusReport, LociError>,
    d: Result<LocusReport, LociError>,
    c: Option<Result<LocusReport, LociError>>,
    vk: Option<Result<VkCoefficients, LociError>>,
    vk_twist: Option<Result<bool, LociError>>,
    jet_rank: Result<usize, LociError>,
    general_m: Result<RingElement, LociError>,
    general_d: Result<RingElement, LociError>,
}

fn compute(k: usize) -> PerK {
    let ctx = ChowContext::p2();
    let jet_rank = twisted_cotangent(&ctx, 2)
        .and_then(|e| bundle::jet(k - 1, &e, &ctx).map_err(LociError::from))
        .map(|p| p.rank());
    PerK {
        k,
        m: deg_m(&ctx, k),
        d: deg_d(&ctx, k),
        c: (k >= 2).then(|| deg_c(&ctx, k)),
        vk: (k >= 2).then(|| vk_coeffs(&ctx, k)),
        vk_twist: (k >= 2).then(|| vk_bundles_match_plane_twist(&ctx, k)),
        jet_rank,
        general_m: general_surface_deg_m(k),
        general_d: general_surface_deg_d(k),
    }
}

fn degree(r: &Result<LocusReport, LociError>) -> Result<RingElement, LociError> {
    r.as_ref().map(|r| r.degree.clone()).map_err(Clone::clone)
}

/// Runs every cross-check for `k = 1..=k_max` and the bivariate recoveries.
/// Per-`k` work runs under `exec`; entries are ordered deterministically.
pub fn verify_all(k_max: usize, exec: Exec) -> VerificationReport {
    let k_max = k_max.max(2);
    let ctx = ChowContext::p2();
    let d = ctx.d();
    let kk = |k: usize| RingElement::from_i64(k as i64);
    let per_k = exec.map((1..=k_max).collect(), compute);
    let mut b = Builder {
        entries: Vec::new(),
    };

    // singular points
    let expected_sp = &(&(&d * &d) + &d) + &RingElement::one();
    b.poly(
        "singular points",
        1,
        &expected_sp,
        &singular_point_count(&ctx),
    );
    b.poly(
        "singular points = deg M_1",
        1,
        &expected_sp,
        &degree(&per_k[0].m),
    );

    // M_k
    for p in &per_k {
        let k = p.k as i64;
        b.poly(
            "M: pipeline = closed form",
            k,
            &closed_form_m(&kk(p.k), &d),
            &degree(&p.m),
        );
        let codim = Locus::M.codim(p.k);
        match &p.jet_rank {
            Ok(r) => b.push(
                "M: codim = rank P^(k-1) - 2",
                k,
                codim.to_string(),
                (*r as i64 - 2).to_string(),
                *r as i64 - 2 == codim,
            ),
            Err(e) => b.error("M: codim = rank P^(k-1) - 2", k, codim.to_string(), e),
        }
    }

    // D_k
    let radial = &(&(&d * &d).scale_i64(10) - &d.scale_i64(8)) + &RingElement::from_i64(4);
    b.poly("D_1 radial degree", 1, &radial, &degree(&per_k[0].d));
    match &per_k[0].d {
        Ok(r) => b.push(
            "D_1 codim",
            1,
            "3".into(),
            r.codim.to_string(),
            r.codim == 3,
        ),
        Err(e) => b.error("D_1 codim", 1, "3".into(), e),
    }
    let mut uniform = [true, true];
    for p in &per_k {
        let got = degree(&p.d);
        for (i, reading) in DReading::ALL.iter().enumerate() {
            let expected = closed_form_d(&kk(p.k), &d, *reading);
            let check = format!("D: {} reading", reading.label());
            let on_mismatch = match reading {
                DReading::AsPrinted => CheckStatus::Flagged,
                DReading::Corrected => CheckStatus::Fail,
            };
            b.poly_with(&check, p.k as i64, &expected, &got, on_mismatch);
            uniform[i] &= got.as_ref().is_ok_and(|g| *g == expected);
        }
    }
    let matching: Vec<DReading> = DReading::ALL
        .iter()
        .zip(uniform)
        .filter(|(_, u)| *u)
        .map(|(r, _)| *r)
        .collect();
    let d_reading = (matching.len() == 1).then(|| matching[0]);
    b.push(
        "D: pipeline matches exactly one reading",
        0,
        "one reading for every k".into(),
        if matching.is_empty() {
            "none".into()
        } else {
            matching
                .iter()
                .map(|r| r.label())
                .collect::<Vec<_>>()
                .join(", ")
        },
        d_reading.is_some(),
    );

    // (u, v, w) and C_k
    for p in per_k.iter().filter(|p| p.k >= 2) {
        let k = p.k as i64;
        let (u, v, w) = closed_form_vk(&kk(p.k), &d);
        let expected = format!("u = {u}; v = {v}; w = {w}");
        match p.vk.as_ref().expect("k >= 2") {
            Ok(got) => {
                let ok = RingElement::from_i64(got.u) == u && got.v == v && got.w == w;
                b.push(
                    "vk: (u, v, w) = closed forms",
                    k,
                    expected,
                    format!("u = {}; v = {}; w = {}", got.u, got.v, got.w),
                    ok,
                );
            }
            Err(e) => b.error("vk: (u, v, w) = closed forms", k, expected, e),
        }
        match p.vk_twist.as_ref().expect("k >= 2") {
            Ok(ok) => b.push(
                "vk: Ω⊗∧²Ω(d+2) = Ω(d-1)",
                k,
                "true".into(),
                ok.to_string(),
                *ok,
            ),
            Err(e) => b.error("vk: Ω⊗∧²Ω(d+2) = Ω(d-1)", k, "true".into(), e),
        }
        let c = p.c.as_ref().expect("k >= 2");
        b.poly(
            "C: pipeline = closed form",
            k,
            &closed_form_c(&kk(p.k), &d),
            &degree(c),
        );
        let codim_c = Locus::C.codim(p.k);
        b.push(
            "C: codim = k^2+3k-2",
            k,
            (k * k + 3 * k - 2).to_string(),
            codim_c.to_string(),
            codim_c == k * k + 3 * k - 2,
        );
        let gap = codim_c - Locus::D.codim(p.k);
        b.push(
            "C: codim C - codim D = k-2",
            k,
            (k - 2).to_string(),
            gap.to_string(),
            gap == k - 2,
        );
    }
    match degree(&per_k[1].d) {
        Ok(d2) => b.poly(
            "C_2 = D_2",
            2,
            &d2,
            &degree(per_k[1].c.as_ref().expect("k = 2")),
        ),
        Err(e) => b.error("C_2 = D_2", 2, "deg D_2".into(), &e),
    }

    // surface generality
    let p2 = IntersectionNumbers::p2();
    for p in &per_k {
        let k = p.k as i64;
        if let Ok(m) = &p.m {
            let got = p
                .general_m
                .as_ref()
                .map(|g| specialize_to(g, &p2))
                .map_err(Clone::clone);
            b.poly("surface: M specializes to P2", k, &m.degree, &got);
        }
        if let Ok(dd) = &p.d {
            let got = p
                .general_d
                .as_ref()
                .map(|g| specialize_to(g, &p2))
                .map_err(Clone::clone);
            b.poly("surface: D specializes to P2", k, &dd.degree, &got);
        }
    }

    // bivariate recovery
    for (locus, ks, label) in [
        (Locus::M, (1..=7).collect::<Vec<_>>(), "closed form"),
        (Locus::D, (1..=8).collect(), "corrected"),
        (Locus::C, (2..=9).collect(), "closed form"),
    ] {
        let check = format!(
            "bivariate: {locus} over k = {}..{}",
            ks[0],
            ks[ks.len() - 1]
        );
        let k_top = *ks.last().expect("nonempty") as i64;
        match recover_bivariate(&ctx, locus, &ks, exec) {
            Ok(r) => {
                let got = r.matching();
                let expected_poly = r
                    .comparisons
                    .iter()
                    .find(|c| c.label == label)
                    .map(|c| c.expected.to_string());
                b.push(
                    &check,
                    k_top,
                    format!("matches {label}: {}", expected_poly.unwrap_or_default()),
                    format!("matches [{}]: {}", got.join(", "), r.poly),
                    got == [label],
                );
            }
            Err(e) => b.error(&check, k_top, label.into(), &e),
        }
    }

    // positivity
    for p in &per_k {
        let reports = [Some(&p.m), Some(&p.d), p.c.as_ref()];
        for r in reports.into_iter().flatten().flatten() {
            let lo = r.min_d.max(0);
            let ok = positive_on(&r.degree, lo..=POSITIVITY_D_MAX);
            b.push(
                &format!(
                    "{}: positive degrees for d in {lo}..{POSITIVITY_D_MAX}",
                    r.locus
                ),
                p.k as i64,
                "true".into(),
                ok.to_string(),
                ok,
            );
        }
    }

    VerificationReport {
        k_max,
        entries: b.entries,
        d_reading,
    }
}
