//! The `qpolar` command line.
//!
//! Every command builds one JSON report object; `--format text` and
//! `--format markdown` are renderings of that same object. Exit codes: `0`
//! success, `1` mismatch or failed assertion, `2` usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::genmat::MatrixLiteral;
use crate::localring::{Elem, Ring};
use crate::parse::{parse_element, parse_matrix};
use crate::quadratic::{solve_brute, solve_exact, solve_rational, solve_split, QuadraticProblem, SplitOutcome};
use crate::quasipolar::decide::RingDecision;
use crate::quasipolar::verify::SCHEMA_VERSION;
use crate::quasipolar::{
    check_teo6_family, classify, classify_idempotent, decide_ring, is_qnil_fast, sample_teo6_family,
    verify_ring, Mode, Oracle, Tag, Teo6Report,
};

/// Default directory for relative `--output` paths.
pub const OUTPUT_DIR_ENV: &str = "QPOLAR_OUTPUT_DIR";

/// Rings with at most this many matrices are swept exhaustively by default.
const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 6561;

#[derive(Parser, Debug)]
#[command(name = "qpolar", version, about = "Quasipolarity in generalized matrix rings K_s(R)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Markdown,
}

#[derive(clap::Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout. Relative paths are resolved
    /// against $QPOLAR_OUTPUT_DIR when it is set.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct RingArgs {
    /// Ring spec such as Z/8, F3, Zloc(2) or Zloc(2)[t]/t^2.
    #[arg(long)]
    ring: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Split,
    Rational,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Exhaustive,
    Sample,
    Fixtures,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one matrix and print its certificate.
    Classify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        s: String,
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve x^2 - mu x + lambda = 0.
    SolveQuad {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the classifier against the oracles over a ring.
    VerifyRing {
        #[command(flatten)]
        ring: RingArgs,
        /// A multiplier, or `all` on finite rings.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Defaults to exhaustive for small finite rings, sample otherwise.
        #[arg(long, value_enum)]
        mode: Option<VerifyMode>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixture file for `--mode fixtures`.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Include wall-clock time (makes the output non-reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide whether K_s(R) is quasipolar.
    DecideRing {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Exit with status 1 unless the ring is shown quasipolar.
        #[arg(long)]
        assert_quasipolar: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search the family [[1,1],[u,w]] (s in the radical) for witnesses.
    Witness {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Comma-separated units.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Comma-separated radical elements.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Random pairs to test when --u/--w are not given.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the non-quasipolar witnesses as a fixture file.
        #[arg(long)]
        fixtures_out: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List and classify the idempotents of a finite K_s(R).
    Idempotents {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the structural checks for one ring and multiplier.
    Report {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// A fixture: a matrix with its ring and, optionally, the expected tag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub ring: String,
    pub matrix: MatrixLiteral,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Tag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema_version: u32,
    pub fixtures: Vec<Fixture>,
}

struct Outcome {
    report: Value,
    exit: i32,
}

fn ok(report: Value) -> Outcome {
    Outcome { report, exit: 0 }
}

fn with_header(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Splits a comma-separated list of element literals at top-level commas.
fn split_list(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts.into_iter().filter(|p| !p.is_empty()).collect()
}

fn parse_list(ring: &Ring, text: &str) -> Result<Vec<Elem>> {
    split_list(text).into_iter().map(|t| parse_element(ring, t)).collect()
}

fn default_mode(ring: &Ring) -> VerifyMode {
    match ring.cardinality() {
        Some(n) if n.saturating_pow(4) <= DEFAULT_EXHAUSTIVE_LIMIT => VerifyMode::Exhaustive,
        _ => VerifyMode::Sample,
    }
}

fn read_fixtures(path: &Path) -> Result<FixtureFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::PreconditionViolated(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::PreconditionViolated(format!("bad fixture file {}: {e}", path.display())))
}

fn cmd_classify(ring: &Ring, s: &str, matrix: &str) -> Result<Outcome> {
    let s = parse_element(ring, s)?;
    let a = parse_matrix(ring, &s, matrix)?;
    Ok(ok(with_header(
        "classify",
        json!({
            "ring": ring.to_string(),
            "s": s,
            "matrix": a,
            "det_s": a.det_s(),
            "tr": a.tr(),
            "classification": to_value(&classify(&a)),
        }),
    )))
}

fn cmd_solve(ring: &Ring, mu: &str, lambda: &str, method: Method) -> Result<Outcome> {
    let problem = QuadraticProblem::new(ring, parse_element(ring, mu)?, parse_element(ring, lambda)?)?;
    let method = match method {
        Method::Auto if problem.is_split_regime() => Method::Split,
        Method::Auto if ring.is_finite() => Method::Brute,
        Method::Auto if ring.base().is_some() => Method::Series,
        Method::Auto => Method::Rational,
        m => m,
    };
    let mut body = json!({
        "ring": ring.to_string(),
        "mu": problem.mu(),
        "lambda": problem.lambda(),
    });
    let (name, roots) = match method {
        Method::Brute => ("brute", solve_brute(&problem)?),
        Method::Rational => ("rational", solve_rational(&problem)?),
        Method::Series => {
            if ring.base().is_none() {
                return Err(Error::PreconditionViolated(format!(
                    "series lifting needs a truncated polynomial ring, not {ring}"
                )));
            }
            let (roots, failures) = solve_exact(&problem)?;
            body["unliftable"] = json!(failures.iter().map(|e| e.to_string()).collect::<Vec<_>>());
            ("series", roots)
        }
        Method::Split => {
            let outcome = solve_split(&problem)?;
            let roots = match &outcome {
                SplitOutcome::Split(pair) => {
                    body["root_j"] = json!(pair.root_j);
                    body["root_u"] = json!(pair.root_u);
                    vec![pair.root_j.clone(), pair.root_u.clone()]
                }
                SplitOutcome::Unsolvable(why) => {
                    body["reason"] = json!(why.as_str());
                    Vec::new()
                }
            };
            ("split", roots)
        }
        Method::Auto => unreachable!("resolved above"),
    };
    body["method"] = json!(name);
    body["solvable"] = json!(!roots.is_empty());
    body["verified"] = json!(roots.iter().all(|t| problem.is_root(t)));
    body["roots"] = json!(roots);
    Ok(ok(with_header("solve-quad", body)))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    ring: &Ring,
    s: &str,
    mode: Option<VerifyMode>,
    samples: usize,
    seed: u64,
    fixtures: Option<&Path>,
    timings: bool,
) -> Result<Outcome> {
    let multipliers = if s == "all" {
        ring.elements().map_err(|_| {
            Error::PreconditionViolated(format!("--s all needs a finite ring, {ring} is infinite"))
        })?
    } else {
        vec![parse_element(ring, s)?]
    };
    let mode = mode.unwrap_or_else(|| default_mode(ring));
    let fixture_file = match (mode, fixtures) {
        (VerifyMode::Fixtures, Some(path)) => Some(read_fixtures(path)?),
        (VerifyMode::Fixtures, None) => {
            return Err(Error::PreconditionViolated("--mode fixtures needs --fixtures FILE".into()))
        }
        _ => None,
    };
    let mut reports = Vec::new();
    let mut expectation_failures = Vec::new();
    let mut passed = true;
    let mut checked = 0;
    for s in &multipliers {
        let lib_mode = match mode {
            VerifyMode::Exhaustive => Mode::Exhaustive,
            VerifyMode::Sample => Mode::Sample { size: samples, seed },
            VerifyMode::Fixtures => {
                let mut list = Vec::new();
                for f in &fixture_file.as_ref().expect("read above").fixtures {
                    if Ring::parse(&f.ring)? != *ring {
                        continue;
                    }
                    let a = f.matrix.to_matrix(ring)?;
                    if a.s() != s {
                        continue;
                    }
                    if let Some(expected) = f.expected {
                        let got = classify(&a).tag;
                        if got != expected {
                            expectation_failures.push(json!({
                                "matrix": a, "s": s, "expected": expected, "got": got,
                            }));
                        }
                    }
                    list.push(a);
                }
                Mode::Fixtures(list)
            }
        };
        let mut report = verify_ring(ring, s, &lib_mode)?;
        if timings {
            report.elapsed_ms = Some(report.elapsed.as_millis() as u64);
        }
        passed &= report.passed;
        checked += report.checked;
        reports.push(report);
    }
    passed &= expectation_failures.is_empty();
    let mut body = json!({
        "ring": ring.to_string(),
        "s": s,
        "checked": checked,
        "passed": passed,
        "reports": to_value(&reports),
    });
    if mode == VerifyMode::Fixtures {
        body["expectation_failures"] = json!(expectation_failures);
    }
    Ok(Outcome {
        report: with_header("verify-ring", body),
        exit: if passed { 0 } else { 1 },
    })
}

fn cmd_decide(ring: &Ring, s: &str, assert_quasipolar: bool) -> Result<Outcome> {
    let s = parse_element(ring, s)?;
    let decision = decide_ring(ring, &s)?;
    let exit = if assert_quasipolar && !matches!(decision, RingDecision::Quasipolar { .. }) {
        1
    } else {
        0
    };
    Ok(Outcome {
        report: with_header(
            "decide-ring",
            json!({ "ring": ring.to_string(), "s": s, "result": to_value(&decision) }),
        ),
        exit,
    })
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn cmd_witness(
    ring: &Ring,
    s: &str,
    u: Option<&str>,
    w: Option<&str>,
    samples: usize,
    seed: u64,
    fixtures_out: Option<&Path>,
) -> Result<Outcome> {
    let s = parse_element(ring, s)?;
    let report: Teo6Report = match (u, w) {
        (Some(u), Some(w)) => check_teo6_family(ring, &s, &parse_list(ring, u)?, &parse_list(ring, w)?)?,
        (None, None) => sample_teo6_family(ring, &s, samples, seed)?,
        _ => return Err(Error::PreconditionViolated("give both --u and --w, or neither".into())),
    };
    let mut body = json!({ "ring": ring.to_string(), "s": s, "search": to_value(&report) });
    if let Some(path) = fixtures_out {
        let fixtures = report
            .witnesses
            .iter()
            .map(|e| Fixture {
                ring: ring.to_string(),
                matrix: crate::quasipolar::decide::family_matrix(ring, &s, &e.u, &e.w).to_literal(),
                expected: Some(Tag::NotQuasipolar),
                note: Some(format!("t^2 - (1+w)t + (w - su) unsolvable for u = {}, w = {}", e.u, e.w)),
            })
            .collect();
        let file = FixtureFile {
            schema_version: SCHEMA_VERSION,
            fixtures,
        };
        let path = resolve_output(path);
        let text = serde_json::to_string_pretty(&file).expect("fixtures serialize") + "\n";
        write_atomic(&path, &text)
            .map_err(|e| Error::PreconditionViolated(format!("cannot write {}: {e}", path.display())))?;
        body["fixtures_written"] = json!(path.display().to_string());
    }
    Ok(Outcome {
        exit: if report.disagreements.is_empty() { 0 } else { 1 },
        report: with_header("witness", body),
    })
}

fn cmd_idempotents(ring: &Ring, s: &str) -> Result<Outcome> {
    let s = parse_element(ring, s)?;
    let oracle = Oracle::new(ring, &s)?;
    let mut entries = Vec::new();
    for e in oracle.idempotents() {
        let (class, p) = classify_idempotent(&e)?;
        entries.push(json!({ "E": e, "class": class, "P": p }));
    }
    Ok(ok(with_header(
        "idempotents",
        json!({ "ring": ring.to_string(), "s": s, "count": entries.len(), "idempotents": entries }),
    )))
}

fn check_row(check: &str, passed: Option<bool>, detail: String) -> Value {
    json!({
        "check": check,
        "result": match passed { Some(true) => "pass", Some(false) => "fail", None => "skipped" },
        "detail": detail,
    })
}

fn cmd_report(ring: &Ring, s: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let s = parse_element(ring, s)?;
    let exhaustive = default_mode(ring) == VerifyMode::Exhaustive;
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Sample { size: samples, seed } };
    let mut rows = Vec::new();

    let verification = verify_ring(ring, &s, &mode)?;
    rows.push(check_row(
        "element criterion: classify agrees with the oracle",
        Some(verification.passed),
        format!("{} matrices ({}), {} mismatches", verification.checked, mode.name(), verification.mismatches.len()),
    ));

    let finite_oracle = if ring.is_finite() { Some(Oracle::new(ring, &s)?) } else { None };
    match &finite_oracle {
        Some(o) if exhaustive => {
            let mut qnil_bad = 0;
            let mut clean_bad = 0;
            let s_unit = ring.is_unit(&s);
            for i in 0..o.matrix_count() {
                let a = o.matrix_at(i);
                if is_qnil_fast(&a) != o.is_qnil_brute(&a)? {
                    qnil_bad += 1;
                }
                if s_unit && o.is_strongly_clean_brute(&a)? != classify(&a).tag.is_quasipolar() {
                    clean_bad += 1;
                }
            }
            rows.push(check_row(
                "quasinilpotent iff det_s and tr lie in J",
                Some(qnil_bad == 0),
                format!("{} matrices, {qnil_bad} disagreements", o.matrix_count()),
            ));
            rows.push(check_row(
                "s a unit: quasipolar iff strongly clean",
                s_unit.then_some(clean_bad == 0),
                if s_unit {
                    format!("{} matrices, {clean_bad} disagreements", o.matrix_count())
                } else {
                    "s is not a unit".into()
                },
            ));
        }
        _ => {
            rows.push(check_row("quasinilpotent iff det_s and tr lie in J", None, "needs a small finite ring".into()));
            rows.push(check_row("s a unit: quasipolar iff strongly clean", None, "needs a small finite ring".into()));
        }
    }

    let decision = decide_ring(ring, &s)?;
    let consistent = match &decision {
        RingDecision::Quasipolar { .. } => verification.witnesses.is_empty(),
        RingDecision::NotQuasipolar { .. } | RingDecision::Unknown { .. } => true,
    };
    rows.push(check_row(
        "ring decision consistent with the sweep",
        Some(consistent),
        match &decision {
            RingDecision::Quasipolar { argument, .. } => format!("quasipolar: {argument}"),
            RingDecision::NotQuasipolar { witness, .. } => format!("not quasipolar, witness {witness}"),
            RingDecision::Unknown { search } => format!("unknown after {} family members", search.checked),
        },
    ));

    if ring.in_jacobson(&s) {
        let family = sample_teo6_family(ring, &s, samples.min(500), seed)?;
        rows.push(check_row(
            "s in J: [[1,1],[u,w]] quasipolar iff its quadratic is solvable",
            Some(family.disagreements.is_empty()),
            format!(
                "{} pairs, {} unsolvable, {} disagreements",
                family.checked,
                family.witnesses.len(),
                family.disagreements.len()
            ),
        ));
    } else {
        rows.push(check_row(
            "s in J: [[1,1],[u,w]] quasipolar iff its quadratic is solvable",
            None,
            "s is a unit".into(),
        ));
    }

    let passed = rows.iter().all(|r| r["result"] != "fail");
    Ok(Outcome {
        exit: if passed { 0 } else { 1 },
        report: with_header(
            "report",
            json!({ "ring": ring.to_string(), "s": s, "passed": passed, "checks": rows }),
        ),
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => Some(compact(v)),
        _ => None,
    }
}

/// Arrays of strings and numbers without quotes, as in `[[6,3],[6,3]]`.
fn compact(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(compact).collect::<Vec<_>>().join(",")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn md_cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| compact(v)).replace('|', "\\|")
}

fn render_markdown(v: &Value, out: &mut String) {
    let Value::Object(map) = v else {
        out.push_str(&md_cell(v));
        out.push('\n');
        return;
    };
    out.push_str("| field | value |\n|---|---|\n");
    let mut tables = Vec::new();
    for (k, x) in map {
        match x {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                tables.push((k, rows.clone()))
            }
            Value::Object(_) => tables.push((k, vec![x.clone()])),
            _ => out.push_str(&format!("| {k} | {} |\n", md_cell(x))),
        }
    }
    for (k, rows) in tables {
        let mut cols: Vec<&String> = Vec::new();
        for r in rows.iter() {
            for c in r.as_object().expect("object rows").keys() {
                if !cols.contains(&c) {
                    cols.push(c);
                }
            }
        }
        out.push_str(&format!("\n### {k}\n\n| {} |\n|", cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" | ")));
        out.push_str(&"---|".repeat(cols.len()));
        out.push('\n');
        for r in rows.iter() {
            let cells: Vec<String> = cols.iter().map(|c| md_cell(r.get(c.as_str()).unwrap_or(&Value::Null))).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
    }
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("json") + "\n",
        Format::Text => {
            let mut out = String::new();
            render_text(report, 0, &mut out);
            out
        }
        Format::Markdown => {
            let mut out = String::new();
            render_markdown(report, &mut out);
            out
        }
    }
}

fn dispatch(command: &Command) -> Result<(Outcome, &OutputArgs)> {
    let ring = |r: &RingArgs| Ring::parse(&r.ring);
    Ok(match command {
        Command::Classify { ring: r, s, matrix, out } => (cmd_classify(&ring(r)?, s, matrix)?, out),
        Command::SolveQuad { ring: r, mu, lambda, method, out } => {
            (cmd_solve(&ring(r)?, mu, lambda, *method)?, out)
        }
        Command::VerifyRing { ring: r, s, mode, samples, seed, fixtures, timings, out } => (
            cmd_verify(&ring(r)?, s, *mode, *samples, *seed, fixtures.as_deref(), *timings)?,
            out,
        ),
        Command::DecideRing { ring: r, s, assert_quasipolar, out } => {
            (cmd_decide(&ring(r)?, s, *assert_quasipolar)?, out)
        }
        Command::Witness { ring: r, s, u, w, samples, seed, fixtures_out, out } => (
            cmd_witness(&ring(r)?, s, u.as_deref(), w.as_deref(), *samples, *seed, fixtures_out.as_deref())?,
            out,
        ),
        Command::Idempotents { ring: r, s, out } => (cmd_idempotents(&ring(r)?, s)?, out),
        Command::Report { ring: r, s, samples, seed, out } => (cmd_report(&ring(r)?, s, *samples, *seed)?, out),
    })
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (outcome, out) = match dispatch(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = render(&outcome.report, out.format);
    match &out.output {
        Some(path) => {
            let path = resolve_output(path);
            if let Err(e) = write_atomic(&path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    outcome.exit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_splitting_respects_brackets() {
        assert_eq!(split_list("1, 3,-5"), vec!["1", "3", "-5"]);
        assert_eq!(split_list("[1,2],3,[0,[1,1]]"), vec!["[1,2]", "3", "[0,[1,1]]"]);
        assert!(split_list("").is_empty());
    }

    #[test]
    fn text_rendering_is_flat_for_scalars() {
        let v = json!({"a": 1, "m": [["6", "3"], ["6", "3"]], "nested": {"b": "x"}});
        let t = render(&v, Format::Text);
        assert_eq!(t, "a: 1\nm: [[6,3],[6,3]]\nnested:\n  b: x\n");
    }

    #[test]
    fn markdown_tables_for_row_lists() {
        let v = json!({"passed": true, "checks": [{"check": "c1", "result": "pass"}]});
        let md = render(&v, Format::Markdown);
        assert!(md.contains("| passed | true |"));
        assert!(md.contains("| check | result |"));
        assert!(md.contains("| c1 | pass |"));
    }
}
