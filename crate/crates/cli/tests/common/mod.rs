#![allow(dead_code)]

use foliation_cli::cli_main;
use proptest::prelude::*;

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("foliation").chain(args.iter().copied());
    let code = cli_main(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn script_path() -> String {
    concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../scripts/paper_script.fol"
    )
    .to_string()
}

/// `(source, exit code, span start, span end)`.
pub const MALFORMED: [(&str, i32, usize, usize); 20] = [
    ("h +", 1, 3, 3),
    ("(h", 1, 2, 2),
    ("h)", 1, 1, 2),
    ("chern(2", 1, 7, 7),
    ("chern(2 omega)", 1, 8, 13),
    ("h / 2", 1, 2, 3),
    ("h $ 2", 1, 2, 3),
    ("x : h", 1, 2, 3),
    ("1/0", 1, 0, 3),
    ("", 1, 0, 0),
    ("h h", 1, 2, 3),
    ("f(,)", 1, 2, 3),
    ("*h", 1, 0, 1),
    ("x := h", 1, 2, 4),
    ("omega + h", 2, 0, 9),
    ("chern(2, h)", 2, 9, 10),
    ("Symm(2, omega + o(h))", 2, 0, 21),
    ("foo(h)", 2, 0, 3),
    ("jet(-1, omega)", 2, 4, 6),
    ("rank(omega, h)", 2, 0, 14),
];

/// Checks one malformed input end to end; returns a description of any mismatch.
pub fn check_malformed(src: &str, code: i32, start: usize, end: usize) -> Result<(), String> {
    let o = run(&["eval", src]);
    let marker = format!(" at {start}..{end}:");
    if o.code != code {
        return Err(format!("{src:?}: exit {} instead of {code}", o.code));
    }
    if !o.stderr.contains(&marker) {
        return Err(format!(
            "{src:?}: expected span {start}..{end}, stderr was {:?}",
            o.stderr
        ));
    }
    if !o.stdout.is_empty() {
        return Err(format!("{src:?}: unexpected stdout {:?}", o.stdout));
    }
    Ok(())
}

/// Bundle expression text over `omega` and line bundles with its rank.
pub fn bundle_expr() -> impl Strategy<Value = (String, usize)> {
    let leaf = prop_oneof![
        Just(("omega".to_string(), 2)),
        (-3i64..=3).prop_map(|m| (format!("o({m}*h)"), 1)),
        (-2i64..=2).prop_map(|m| (format!("o((d + {m})*h)"), 1)),
    ];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|(s, r)| (format!("dual({s})"), r)),
            (inner.clone(), inner.clone()).prop_map(|((a, ra), (b, rb))| {
                if ra * rb <= 4 {
                    (format!("({a}) * ({b})"), ra * rb)
                } else {
                    (a, ra)
                }
            }),
            (inner.clone(), inner.clone()).prop_map(|((a, ra), (b, rb))| {
                if ra + rb <= 4 {
                    (format!("({a}) + ({b})"), ra + rb)
                } else {
                    (a, ra)
                }
            }),
            (1usize..=2, inner.clone()).prop_map(|(n, (a, r))| match r {
                1 => (format!("Symm({n}, {a})"), 1),
                2 => (format!("Symm({n}, {a})"), n + 1),
                _ => (a, r),
            }),
            inner.prop_map(|(a, r)| if r == 2 {
                (format!("wedge2({a})"), 1)
            } else {
                (a, r)
            }),
        ]
    })
}
