//! Command-line front end: `eval`, `locus`, `table`, `verify`, `run`.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 evaluation error,
//! 3 verification mismatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use foliation_core::chow::ChowContext;
use foliation_core::dsl::{self, DslError};
use foliation_core::loci::{self, verify_all, CheckStatus, Locus, LocusReport};
use foliation_core::{Exec, Rational, RingElement};
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_EVAL: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "foliation",
    version,
    about = "Exact degrees of loci of plane foliations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Surface {
    /// Abstract polarized surface with symbolic Chern numbers.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one expression.
    Eval {
        expr: String,
        #[arg(long)]
        surface: Option<Surface>,
    },
    /// Report codimension and degree of one locus (JSON unless --format text).
    Locus {
        locus: Locus,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long)]
        surface: Option<Surface>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Tabulate several loci for k up to --kmax.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "M,D,C")]
        loci: Vec<Locus>,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        surface: Option<Surface>,
    },
    /// Cross-check the pipeline against every closed form.
    Verify {
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Execute a `.fol` script.
    Run {
        file: PathBuf,
        #[arg(long)]
        surface: Option<Surface>,
    },
}

fn context(surface: Option<Surface>) -> ChowContext {
    match surface {
        Some(Surface::General) => ChowContext::abstract_surface(None),
        None => ChowContext::p2(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn cli_main<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { expr, surface } => cmd_eval(&expr, surface, out, err),
        Command::Locus {
            locus,
            k,
            d,
            surface,
            format,
        } => cmd_locus(locus, k, d, surface, format, out, err),
        Command::Table {
            loci,
            kmax,
            format,
            surface,
        } => cmd_table(&loci, kmax, format, surface, out, err),
        Command::Verify { kmax, format } => cmd_verify(kmax, format, out, err),
        Command::Run { file, surface } => cmd_run(&file, surface, out, err),
    };
    let _ = out.flush();
    result
}

fn report_dsl_error(e: &DslError, src: &str, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "{}", e.render(src));
    e.kind.exit_code()
}

fn cmd_eval(src: &str, surface: Option<Surface>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dsl::eval_source(src, &context(surface)) {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            EXIT_OK
        }
        Err(e) => report_dsl_error(&e, src, err),
    }
}

fn cmd_run(
    path: &PathBuf,
    surface: Option<Surface>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "cannot read {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    match dsl::run_source(&src, &context(surface)) {
        Ok(o) => {
            if let Some(v) = o.shown() {
                let _ = writeln!(out, "{v}");
            }
            EXIT_OK
        }
        Err(e) => report_dsl_error(&e, &src, err),
    }
}

/// JSON number for integers that fit in `i64`, string otherwise.
fn coefficient_json(q: &Rational) -> Json {
    if q.is_integer() {
        if let Ok(n) = q.to_string().parse::<i64>() {
            return Json::from(n);
        }
    }
    Json::String(q.to_string())
}

/// Coefficient map: `{"d^2": 66, "d^1": -198, "d^0": 153}` for polynomials in
/// `d` alone, keyed by monomial text otherwise.
pub fn coefficient_map(x: &RingElement) -> Map<String, Json> {
    let mut map = Map::new();
    let vars = x.variables();
    let only_d = match vars.as_slice() {
        [v] if v.name() == "d" => Some(v),
        _ => None,
    };
    if let Some(d) = only_d {
        let top = x.terms().map(|(m, _)| m.exponent(d)).max().unwrap_or(0);
        for e in (0..=top).rev() {
            let q = x
                .terms()
                .find(|(m, _)| m.exponent(d) == e)
                .map_or_else(|| Rational::from_integer(0.into()), |(_, q)| q.clone());
            map.insert(format!("d^{e}"), coefficient_json(&q));
        }
    } else if vars.is_empty() {
        let q = x
            .as_rational()
            .unwrap_or_else(|| Rational::from_integer(0.into()));
        map.insert("d^0".into(), coefficient_json(&q));
    } else {
        for (m, q) in x.sorted_terms() {
            let key = if m.is_one() {
                "1".to_string()
            } else {
                m.to_string()
            };
            map.insert(key, coefficient_json(q));
        }
    }
    map
}

fn report_json(r: &LocusReport) -> Json {
    json!({
        "locus": r.locus.to_string(),
        "k": r.k,
        "context": r.context,
        "d": r.d,
        "codim": r.codim,
        "degree": r.degree.to_string(),
        "coefficients": coefficient_map(&r.degree),
        "validity": r.validity(),
        "rank_m": r.rank_m.to_string(),
        "rank_d": r.rank_d.to_string(),
        "flags": r.flags,
        "notes": r.notes,
    })
}

fn report_text(r: &LocusReport) -> String {
    let mut s =
        format!(
        "{}_{} on {}\n  codim    {}\n  degree   {}\n  valid    {}\n  rank M   {}\n  rank D   {}\n",
        r.locus, r.k, r.context, r.codim, r.degree, r.validity(), r.rank_m, r.rank_d
    );
    for f in r.flags.iter().chain(&r.notes) {
        s.push_str(&format!("  note     {f}\n"));
    }
    s
}

fn compute_report(
    ctx: &ChowContext,
    locus: Locus,
    k: usize,
    d: Option<i64>,
) -> Result<LocusReport, loci::LociError> {
    let r = loci::locus_report(ctx, locus, k)?;
    Ok(match d {
        Some(d) => r.at_d(d),
        None => r,
    })
}

fn cmd_locus(
    locus: Locus,
    k: usize,
    d: Option<i64>,
    surface: Option<Surface>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let r = match compute_report(&context(surface), locus, k, d) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_EVAL;
        }
    };
    match format {
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report_json(&r)).expect("json")
            );
        }
        Format::Text => {
            let _ = write!(out, "{}", report_text(&r));
        }
        Format::Csv => {
            let _ = writeln!(err, "error: csv output is only available for `table`");
            return EXIT_USAGE;
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct Row {
    locus: String,
    k: usize,
    codim: i64,
    degree: String,
    validity: String,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_table(
    loci: &[Locus],
    kmax: usize,
    format: Format,
    surface: Option<Surface>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let ctx = context(surface);
    let jobs: Vec<(Locus, usize)> = loci
        .iter()
        .flat_map(|&l| (l.min_k()..=kmax).map(move |k| (l, k)))
        .collect();
    let results = Exec::Parallel.map(jobs, |(l, k)| loci::locus_report(&ctx, l, k));
    let mut rows = Vec::new();
    for r in results {
        match r {
            Ok(r) => rows.push(Row {
                locus: r.locus.to_string(),
                k: r.k,
                codim: r.codim,
                degree: r.degree.to_string(),
                validity: r.validity(),
            }),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_EVAL;
            }
        }
    }
    match format {
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&rows).expect("json")
            );
        }
        Format::Csv => {
            let _ = writeln!(out, "locus,k,codim,degree,validity");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.locus,
                    r.k,
                    r.codim,
                    csv_field(&r.degree),
                    csv_field(&r.validity)
                );
            }
        }
        Format::Text => {
            let width = rows
                .iter()
                .map(|r| r.degree.len())
                .max()
                .unwrap_or(6)
                .max(6);
            let _ = writeln!(
                out,
                "{:<5} {:>3} {:>6}  {:<width$}  validity",
                "locus", "k", "codim", "degree"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<5} {:>3} {:>6}  {:<width$}  {}",
                    r.locus, r.k, r.codim, r.degree, r.validity
                );
            }
        }
    }
    EXIT_OK
}

fn cmd_verify(kmax: usize, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let report = verify_all(kmax, Exec::Parallel);
    match format {
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report.entries).expect("json")
            );
        }
        Format::Text => {
            for e in &report.entries {
                let tag = match e.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Flagged => "FLAG",
                };
                let _ = write!(
                    out,
                    "[{tag}] {} (k={}): expected {}, got {}",
                    e.check, e.k, e.expected, e.got
                );
                if let Some(delta) = &e.delta {
                    let _ = write!(out, ", delta {delta}");
                }
                let _ = writeln!(out);
            }
            let reading = report.d_reading.map_or("none", |r| r.label());
            let _ = writeln!(
                out,
                "summary: {} pass, {} fail, {} flagged; D degree follows the {reading} reading",
                report.count(CheckStatus::Pass),
                report.count(CheckStatus::Fail),
                report.count(CheckStatus::Flagged)
            );
        }
        Format::Csv => {
            let _ = writeln!(err, "error: csv output is only available for `table`");
            return EXIT_USAGE;
        }
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}
