//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicU32, Ordering};

use common::{bundle_expr, check_malformed, run, script_path, MALFORMED};
use foliation_core::bundle;
use foliation_core::chow::{specialize_to, ChowContext, IntersectionNumbers};
use foliation_core::dsl::{eval_source, run_source, Value};
use foliation_core::loci::{
    closed_form_c, closed_form_d, closed_form_m, closed_form_vk, deg_c, deg_d, deg_m,
    general_surface_deg_m, recover_bivariate, singular_point_count, twisted_cotangent, verify_all,
    vk_coeffs, CheckStatus, DReading, Locus,
};
use foliation_core::{Exec, RingElement};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn k(n: usize) -> RingElement {
    RingElement::from_i64(n as i64)
}

fn m_pipeline_vs_closed_form() -> Outcome {
    let ctx = ChowContext::p2();
    let e = twisted_cotangent(&ctx, 2).map_err(|e| e.to_string())?;
    for n in 1..=6 {
        let jet = bundle::jet(n - 1, &e, &ctx).map_err(|e| e.to_string())?;
        let got = ctx
            .integrate(&jet.chern_class(2))
            .map_err(|e| e.to_string())?;
        let want = closed_form_m(&k(n), &ctx.d());
        ensure!(got == want, "k = {n}: pipeline {got}, closed form {want}");
    }
    let m1 = deg_m(&ctx, 1).map_err(|e| e.to_string())?.degree;
    let sing = singular_point_count(&ctx).map_err(|e| e.to_string())?;
    ensure!(
        m1.to_string() == "d^2 + d + 1" && m1 == sing,
        "deg M_1 = {m1}, singular points {sing}"
    );
    Ok("k = 1..6 exact; deg M_1 = d^2 + d + 1 = singular point count".into())
}

fn d1_degree_and_codim() -> Outcome {
    let r = deg_d(&ChowContext::p2(), 1).map_err(|e| e.to_string())?;
    ensure!(
        r.degree.to_string() == "10*d^2 - 8*d + 4",
        "deg D_1 = {}",
        r.degree
    );
    ensure!(r.codim == 3, "codim D_1 = {}", r.codim);
    Ok("deg D_1 = 10*d^2 - 8*d + 4, codim 3".into())
}

fn d_reading_adjudication() -> Outcome {
    let ctx = ChowContext::p2();
    let degrees: Vec<RingElement> = (1..=5)
        .map(|n| deg_d(&ctx, n).map(|r| r.degree))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let uniform: Vec<DReading> = DReading::ALL
        .into_iter()
        .filter(|r| (1..=5).all(|n| closed_form_d(&k(n), &ctx.d(), *r) == degrees[n - 1]))
        .collect();
    let partial: Vec<DReading> = DReading::ALL
        .into_iter()
        .filter(|r| {
            !uniform.contains(r)
                && (1..=5).any(|n| closed_form_d(&k(n), &ctx.d(), *r) == degrees[n - 1])
        })
        .collect();
    ensure!(
        uniform == [DReading::Corrected],
        "readings matching for all k: {uniform:?}"
    );
    ensure!(
        partial.is_empty(),
        "readings matching for some k only: {partial:?}"
    );
    let report = verify_all(5, Exec::Parallel);
    let e = report
        .find("D: as-printed reading", 1)
        .ok_or("no as-printed entry for k = 1")?;
    ensure!(
        e.status == CheckStatus::Flagged,
        "as-printed k = 1 status {:?}",
        e.status
    );
    ensure!(
        e.delta.as_deref() == Some("30*d^2"),
        "as-printed k = 1 delta {:?}",
        e.delta
    );
    ensure!(
        report.d_reading == Some(DReading::Corrected),
        "report reading {:?}",
        report.d_reading
    );
    Ok("corrected reading matches k = 1..5; as-printed flagged at k = 1 with delta 30*d^2".into())
}

fn vk_coefficients() -> Outcome {
    let ctx = ChowContext::p2();
    for n in 2..=6 {
        let c = vk_coeffs(&ctx, n).map_err(|e| e.to_string())?;
        let (u, v, w) = closed_form_vk(&k(n), &ctx.d());
        ensure!(
            RingElement::from_i64(c.u) == u && c.v == v && c.w == w,
            "k = {n}: got ({}, {}, {}), closed form ({u}, {v}, {w})",
            c.u,
            c.v,
            c.w
        );
    }
    Ok("(u, v, w) exact for k = 2..6".into())
}

fn c_degrees_and_codims() -> Outcome {
    let ctx = ChowContext::p2();
    let c2 = deg_c(&ctx, 2).map_err(|e| e.to_string())?.degree;
    let d2 = deg_d(&ctx, 2).map_err(|e| e.to_string())?.degree;
    ensure!(c2 == d2, "deg C_2 = {c2}, deg D_2 = {d2}");
    for n in 2..=5 {
        let r = deg_c(&ctx, n).map_err(|e| e.to_string())?;
        let want = closed_form_c(&k(n), &ctx.d());
        ensure!(
            r.degree == want,
            "k = {n}: pipeline {}, closed form {want}",
            r.degree
        );
        let kk = n as i64;
        ensure!(r.codim == kk * kk + 3 * kk - 2, "codim C_{n} = {}", r.codim);
        ensure!(
            Locus::C.codim(n) - Locus::D.codim(n) == kk - 2,
            "codim gap at k = {n}"
        );
    }
    Ok("deg C_2 = deg D_2; k = 2..5 exact; codims k^2+3k-2 with gap k-2".into())
}

fn surface_generality() -> Outcome {
    let ctx = ChowContext::p2();
    let nums = IntersectionNumbers::p2();
    for n in 1..=6 {
        let general = general_surface_deg_m(n).map_err(|e| e.to_string())?;
        let special = specialize_to(&general, &nums);
        let direct = deg_m(&ctx, n).map_err(|e| e.to_string())?.degree;
        ensure!(
            special == direct,
            "k = {n}: specialized {special}, direct {direct}"
        );
    }
    Ok("general M_k at (1, -3, 9, 3) equals P2 for k = 1..6".into())
}

fn ring(src: &str, ctx: &ChowContext) -> Result<RingElement, TestCaseError> {
    match eval_source(src, ctx) {
        Ok(Value::Scalar(x) | Value::Class(x)) => Ok(x),
        Ok(v) => Err(TestCaseError::fail(format!(
            "{src}: expected a ring element, got {}",
            v.type_name()
        ))),
        Err(e) => Err(TestCaseError::fail(format!("{src}: {e}"))),
    }
}

fn value(src: &str, ctx: &ChowContext) -> Result<Value, TestCaseError> {
    eval_source(src, ctx).map_err(|e| TestCaseError::fail(format!("{src}: {e}")))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn property_suite() -> Outcome {
    const CASES: u32 = 200;
    let ctx = ChowContext::p2();
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (bundle_expr(), bundle_expr(), 0usize..=2);
    let cases = AtomicU32::new(0);
    runner
        .run(&strategy, |((b, rb), (c, rc), n)| {
            cases.fetch_add(1, Ordering::Relaxed);
            let one = RingElement::one();
            let cs = ring(&format!("ctotal({b}) * stotal({b})"), &ctx)?;
            check(cs == one, || format!("c*s = {cs} for {b}"))?;

            let jet = ring(&format!("ctotal(jet({n}, {b}))"), &ctx)?;
            let pieces: Vec<String> = (0..=n)
                .map(|j| format!("ctotal(Symm({j}, omega) * ({b}))"))
                .collect();
            let product = ring(&pieces.join(" * "), &ctx)?;
            check(jet == product, || {
                format!("jet({n}, {b}): {jet} vs {product}")
            })?;
            let sum = ring(&format!("ctotal(({b}) + ({c}))"), &ctx)?;
            let prod = ring(&format!("ctotal({b}) * ctotal({c})"), &ctx)?;
            check(sum == prod, || format!("whitney {b} + {c}"))?;

            let base = value(&b, &ctx)?;
            check(value(&format!("({b}) * o(0)"), &ctx)? == base, || {
                format!("twist by trivial: {b}")
            })?;
            check(value(&format!("twist({b}, 0)"), &ctx)? == base, || {
                format!("twist(_, 0): {b}")
            })?;
            if rb <= 2 {
                check(value(&format!("Symm(1, {b})"), &ctx)? == base, || {
                    format!("Symm(1, {b})")
                })?;
            }

            let rank = |src: String| ring(&format!("rank({src})"), &ctx);
            let ri = |r: usize| RingElement::from_i64(r as i64);
            check(rank(b.clone())? == ri(rb), || format!("rank {b}"))?;
            check(rank(format!("({b}) * ({c})"))? == ri(rb * rc), || {
                format!("rank {b} * {c}")
            })?;
            check(rank(format!("({b}) + ({c})"))? == ri(rb + rc), || {
                format!("rank {b} + {c}")
            })?;
            check(
                rank(format!("jet({n}, {b})"))? == ri(rb * (n + 1) * (n + 2) / 2),
                || format!("rank jet {b}"),
            )?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let cases = cases.into_inner();
    ensure!(cases >= CASES, "only {cases} cases ran");
    Ok(format!("{cases} random bundle expressions: c*s = 1, jet Whitney product, trivial twist, Symm(1), ranks"))
}

fn dsl_golden_and_malformed() -> Outcome {
    let src = std::fs::read_to_string(script_path()).map_err(|e| e.to_string())?;
    let out = run_source(&src, &ChowContext::p2()).map_err(|e| e.to_string())?;
    let get = |n: &str| out.env.get(n).map(|v| v.to_string()).unwrap_or_default();
    ensure!(get("m2") == "15*d^2 - 15*d + 6", "m2 = {}", get("m2"));
    ensure!(get("m3") == "66*d^2 - 198*d + 153", "m3 = {}", get("m3"));
    ensure!(get("m4") == "190*d^2 - 950*d + 1195", "m4 = {}", get("m4"));
    ensure!(get("check") == "0", "jet and product routes disagree");
    let o = run(&["run", &script_path()]);
    ensure!(
        o.code == 0 && o.stdout == "66*d^2 - 198*d + 153\n",
        "run exit {} output {:?}",
        o.code,
        o.stdout
    );
    for (src, code, start, end) in MALFORMED {
        check_malformed(src, code, start, end)?;
    }
    Ok(format!(
        "golden script exact; {} malformed inputs rejected with spans and exit codes",
        MALFORMED.len()
    ))
}

fn bivariate_recovery() -> Outcome {
    let ctx = ChowContext::p2();
    let m = recover_bivariate(&ctx, Locus::M, &(1..=7).collect::<Vec<_>>(), Exec::Parallel)
        .map_err(|e| e.to_string())?;
    ensure!(
        m.matching() == ["closed form"],
        "M comparisons {:?}",
        m.comparisons
    );
    let c = recover_bivariate(&ctx, Locus::C, &(2..=9).collect::<Vec<_>>(), Exec::Parallel)
        .map_err(|e| e.to_string())?;
    ensure!(
        c.matching() == ["closed form"],
        "C comparisons {:?}",
        c.comparisons
    );
    Ok(format!(
        "M (degree {} in k) and C (degree {} in k) match coefficient by coefficient",
        m.poly.degree().unwrap_or(0),
        c.poly.degree().unwrap_or(0)
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("M pipeline equals closed form", m_pipeline_vs_closed_form),
        ("D_1 degree and codimension", d1_degree_and_codim),
        ("D closed-form reading adjudication", d_reading_adjudication),
        ("cycle-class coefficients (u, v, w)", vk_coefficients),
        ("C degrees and codimensions", c_degrees_and_codims),
        ("general surface specializes to P2", surface_generality),
        ("randomized bundle property suite", property_suite),
        (
            "DSL golden script and malformed inputs",
            dsl_golden_and_malformed,
        ),
        ("bivariate recovery over k", bivariate_recovery),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
