//! Subcommands. Each runner returns its full output and exit code so the
//! binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use h3calc::family::{derive, excess_ledger, Derivation, FamilyError, Variant};
use h3calc::field::{Field, PrimeField, QuadExt, Rationals};
use h3calc::jet::{degeneracy_rank, rank_at_abscissa, CurvePoint, HyperellipticCurve, JetError};
use h3calc::local_multiplicity::{
    case_fixture, colength, minors, render_monomial, CaseLabel, Exp, GermMatrix, MultiplicityError,
    TruncSeries,
};
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::arith::{eval_arith, FieldArith, GermArith, UPolyArith};
use crate::config::{SetupConfig, FAMILY_CONFIG};
use crate::eval::Evaluator;
use crate::expr::{parse_at, DiagKind, Diagnostic, Pos};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "h3calc",
    version,
    about = "Exact Chern-class, colength and jet computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive the hyperelliptic divisor class end to end and check it.
    #[command(name = "verify-h3")]
    VerifyH3(VerifyArgs),
    /// Evaluate a Chern-class expression against a setup file.
    Chern(ChernArgs),
    /// Colength of the maximal-minor ideal of a 2x3 germ matrix.
    Mult(MultArgs),
    /// Rank of the jet evaluation map on a hyperelliptic curve.
    Weierstrass(WeierstrassArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Family with only smooth fibers.
    #[arg(long)]
    pub smooth: bool,
    #[arg(long)]
    pub json: bool,
    /// Replace a ledger multiplicity, e.g. `Z_node=0`.
    #[arg(long = "ledger-override", value_name = "LABEL=N")]
    pub ledger_override: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ChernArgs {
    /// Setup file (text or JSON); defaults to the built-in family setup.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub expr: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["fixture", "matrix"])))]
pub struct MultArgs {
    /// One of Z_node, XY_node, torsion_A, weierstrass_Y.
    #[arg(long)]
    pub fixture: Option<String>,
    /// File with a `vars U V` line and two rows of three polynomials.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    pub cutoff: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `q` or `fp:P`.
    #[arg(long, default_value = "q")]
    pub field: FieldSpec,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("candidates").required(true).args(["points", "scan_all"])))]
pub struct WeierstrassArgs {
    /// Degree-8 squarefree polynomial in `x`.
    #[arg(long = "f", value_name = "POLY")]
    pub f: String,
    /// `q`, `fp:P` or `quadext:D` (the rationals with `w = sqrt(D)`).
    #[arg(long)]
    pub field: FieldSpec,
    /// File with one `x, y` or `x` per line.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Every affine point; finite fields only.
    #[arg(long)]
    pub scan_all: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
    QuadExt(BigRational),
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
            PrimeField::new(p).map_err(|e| e.to_string())?;
            return Ok(FieldSpec::Fp(p));
        }
        if let Some(d) = s.strip_prefix("quadext:") {
            let d: BigRational = d.parse().map_err(|_| format!("bad radicand `{d}`"))?;
            QuadExt::new(Rationals, d.clone()).map_err(|e| e.to_string())?;
            return Ok(FieldSpec::QuadExt(d));
        }
        Err(format!(
            "unknown field `{s}` (expected q, fp:P or quadext:D)"
        ))
    }
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

fn json_text(j: &Json) -> String {
    let mut s = serde_json::to_string_pretty(j).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::VerifyH3(a) => verify_h3(a),
        Command::Chern(a) => chern(a),
        Command::Mult(a) => mult(a),
        Command::Weierstrass(a) => weierstrass(a),
    }
}

/// Parses `argv` and runs; clap's own errors map to the usage exit code.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

// ---- verify-h3 ----

fn parse_override(s: &str) -> Result<(CaseLabel, u32), String> {
    let (l, n) = s
        .split_once('=')
        .ok_or_else(|| format!("override `{s}` is not of the form LABEL=N"))?;
    let label = CaseLabel::from_str(l.trim()).map_err(|e| e.to_string())?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| format!("multiplicity `{}` is not a nonnegative integer", n.trim()))?;
    Ok((label, n))
}

fn theorem_line(variant: Variant, value: &str) -> String {
    match variant {
        Variant::Stable => format!("[H̄] = {value}"),
        Variant::Smooth => format!("[H] = {value}"),
    }
}

pub fn verify_h3(a: &VerifyArgs) -> Outcome {
    let variant = if a.smooth {
        Variant::Smooth
    } else {
        Variant::Stable
    };
    let mut overrides = Vec::new();
    for o in &a.ledger_override {
        match parse_override(o) {
            Ok(x) => overrides.push(x),
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        }
    }
    if a.smooth && !overrides.is_empty() {
        return Outcome::error(EXIT_USAGE, "--ledger-override has no effect with --smooth");
    }
    let ledger = match variant {
        Variant::Smooth => None,
        Variant::Stable => match excess_ledger() {
            Ok(l) => Some(
                overrides
                    .iter()
                    .fold(l, |l, &(label, n)| l.with_override(label, n)),
            ),
            Err(e) => return Outcome::error(EXIT_FAIL, e),
        },
    };
    let d = match derive(variant, ledger) {
        Ok(d) => d,
        Err(e) => return Outcome::error(EXIT_FAIL, e),
    };
    let code = if d.passes() { EXIT_OK } else { EXIT_FAIL };
    let stdout = if a.json {
        json_text(&derivation_json(&d))
    } else {
        derivation_text(&d)
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

fn theorem_value(d: &Derivation) -> (String, Option<String>) {
    match &d.theorem {
        Ok(t) => (t.pretty(), None),
        Err(FamilyError::NonIntegralResult(r)) => {
            (r.pretty(), Some("non-integral coefficients".into()))
        }
        Err(e) => ("?".into(), Some(e.to_string())),
    }
}

fn derivation_text(d: &Derivation) -> String {
    let p = &d.chain;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "family: {}",
        match d.variant {
            Variant::Stable => "one δ0 fiber and one δ1 fiber",
            Variant::Smooth => "smooth fibers only",
        }
    );
    let _ = writeln!(s, "[D] = {}", p.degeneracy_class);
    let _ = writeln!(s, "π_* c1(F)^2 = {}", p.push_c1f_squared);
    let _ = writeln!(s, "π_* c2(F) = {}", p.push_c2f);
    let _ = writeln!(s, "π_* [D] = {}", p.before_kappa);
    let _ = writeln!(s, "κ = 12λ - δ0 - δ1");
    let _ = writeln!(s, "π_* [D] = {}", p.result);
    match &d.ledger {
        Some(l) => {
            let _ = writeln!(s, "excess ledger:");
            for e in &l.entries {
                let _ = writeln!(
                    s,
                    "  {:<14} {}  count {}  multiplicity {}  weight {}",
                    e.label.name(),
                    e.fiber,
                    e.count,
                    e.multiplicity,
                    e.weight()
                );
            }
            let _ = writeln!(s, "correction = {}", d.correction);
        }
        None => {
            let _ = writeln!(s, "excess ledger: empty");
        }
    }
    let (value, problem) = theorem_value(d);
    let _ = writeln!(s, "(π_* [D] - correction) / 8 = {value}");
    let _ = writeln!(s, "expected {}", Derivation::expected(d.variant).pretty());
    match problem {
        _ if d.passes() => {
            let _ = writeln!(s, "PASS");
        }
        Some(p) => {
            let _ = writeln!(s, "FAIL: {p}");
        }
        None => {
            let _ = writeln!(s, "FAIL: result differs from the expected class");
        }
    }
    let _ = writeln!(s, "{}", theorem_line(d.variant, &value));
    s
}

fn derivation_json(d: &Derivation) -> Json {
    let p = &d.chain;
    let (value, problem) = theorem_value(d);
    json!({
        "variant": match d.variant { Variant::Stable => "stable", Variant::Smooth => "smooth" },
        "degeneracy_class": p.degeneracy_class.to_string(),
        "push_c1f_squared": p.push_c1f_squared.to_string(),
        "push_c2f": p.push_c2f.to_string(),
        "push_degeneracy_class": p.before_kappa.to_string(),
        "kappa_substitution": "12λ - δ0 - δ1",
        "after_substitution": p.result.to_string(),
        "ledger": d.ledger.as_ref().map(|l| l.entries.iter().map(|e| json!({
            "label": e.label.name(),
            "fiber": e.fiber.to_string(),
            "count": e.count,
            "multiplicity": e.multiplicity,
            "weight": e.weight(),
        })).collect::<Vec<_>>()),
        "correction": d.correction.to_string(),
        "theorem": value,
        "problem": problem,
        "expected": Derivation::expected(d.variant).pretty(),
        "status": if d.passes() { "PASS" } else { "FAIL" },
        "final": theorem_line(d.variant, &value),
    })
}

// ---- chern ----

/// The diagnostic followed by the offending line and a caret.
fn located(src: &str, d: &Diagnostic) -> String {
    let mut s = format!("error: {d}\n");
    if let Some(line) = src.lines().nth(d.pos.line.saturating_sub(1)) {
        let _ = writeln!(s, "  {line}");
        let _ = writeln!(s, "  {}^", " ".repeat(d.pos.col.saturating_sub(1)));
    }
    s
}

pub fn chern(a: &ChernArgs) -> Outcome {
    let (src, origin) = match &a.config {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(s) => (s, p.display().to_string()),
            Err(e) => return Outcome::error(EXIT_USAGE, format!("{}: {e}", p.display())),
        },
        None => (FAMILY_CONFIG.to_string(), "built-in setup".to_string()),
    };
    let cfg = match SetupConfig::parse(&src) {
        Ok(c) => c,
        Err(e) => return Outcome::error(EXIT_USAGE, format!("{origin}: {e}")),
    };
    let ev = Evaluator::new(&cfg);
    let result = crate::expr::parse(&a.expr).and_then(|e| ev.run(&e).map(|v| (e, v)));
    match result {
        Ok((e, v)) => Outcome::ok(if a.json {
            json_text(&ev.to_json(&e, &v))
        } else {
            format!("{}\n", ev.render(&v))
        }),
        Err(d) => Outcome {
            stdout: String::new(),
            stderr: located(&a.expr, &d),
            code: if d.kind == DiagKind::Eval {
                EXIT_FAIL
            } else {
                EXIT_USAGE
            },
        },
    }
}

// ---- mult ----

/// Parses a matrix file: `vars U V`, then two lines of three comma-separated
/// polynomials. Entries are exact, so `prec` only bounds the stored terms.
pub fn parse_matrix_file(src: &str, prec: u32) -> Result<GermMatrix, Diagnostic> {
    let mut vars: Option<[String; 2]> = None;
    let mut rows: Vec<[TruncSeries; 3]> = Vec::new();
    let mut last = Pos { line: 1, col: 1 };
    for (i, full) in src.lines().enumerate() {
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.chars().take_while(|c| c.is_whitespace()).count();
        let pos = Pos {
            line: i + 1,
            col: lead + 1,
        };
        last = pos;
        let Some(v) = &vars else {
            let words: Vec<&str> = content.split_whitespace().collect();
            match words.as_slice() {
                ["vars", u, t] if u != t => vars = Some([u.to_string(), t.to_string()]),
                _ => {
                    return Err(Diagnostic::syntax(
                        pos,
                        "expected `vars U V` with two distinct names",
                    ))
                }
            }
            continue;
        };
        if rows.len() == 2 {
            return Err(Diagnostic::syntax(pos, "the matrix has only two rows"));
        }
        let arith = GermArith {
            vars: [v[0].as_str(), v[1].as_str()],
            cutoff: prec,
        };
        let mut entries = Vec::new();
        let mut offset = 0;
        for cell in content.split(',') {
            let e = parse_at(
                cell,
                Pos {
                    line: i + 1,
                    col: offset + 1,
                },
            )?;
            entries.push(eval_arith(&arith, &e)?);
            offset += cell.chars().count() + 1;
        }
        let n = entries.len();
        let row: [TruncSeries; 3] = entries
            .try_into()
            .map_err(|_| Diagnostic::syntax(pos, format!("expected 3 entries, found {n}")))?;
        rows.push(row);
    }
    let Some(vars) = vars else {
        return Err(Diagnostic::syntax(last, "missing `vars U V` line"));
    };
    let [r0, r1]: [[TruncSeries; 3]; 2] = rows
        .try_into()
        .map_err(|_| Diagnostic::syntax(last, "expected two rows of entries"))?;
    Ok(GermMatrix {
        vars,
        entries: [r0, r1],
    })
}

fn render_basis(vars: [&str; 2], basis: &[Exp]) -> Vec<String> {
    basis
        .iter()
        .map(|&e| {
            let m = render_monomial(vars, e);
            if m.is_empty() {
                "1".into()
            } else {
                m
            }
        })
        .collect()
}

fn colength_over(
    spec: &FieldSpec,
    gens: &[TruncSeries],
    cutoff: u32,
) -> Result<h3calc::local_multiplicity::ColengthReport, MultiplicityError> {
    match spec {
        FieldSpec::Q => colength(&Rationals, gens, cutoff),
        FieldSpec::Fp(p) => {
            let k = PrimeField::new(*p)?;
            if k.characteristic() == 2 {
                return Err(MultiplicityError::FieldCharTwo);
            }
            colength(&k, gens, cutoff)
        }
        FieldSpec::QuadExt(_) => unreachable!("rejected before the computation"),
    }
}

fn field_name(spec: &FieldSpec) -> String {
    match spec {
        FieldSpec::Q => "Q".into(),
        FieldSpec::Fp(p) => format!("F_{p}"),
        FieldSpec::QuadExt(d) => format!("Q(sqrt({d}))"),
    }
}

pub fn mult(a: &MultArgs) -> Outcome {
    if matches!(a.field, FieldSpec::QuadExt(_)) {
        return Outcome::error(EXIT_USAGE, "mult works over q or fp:P");
    }
    let prec = a.cutoff + 2;
    let (source, m) = match (&a.fixture, &a.matrix) {
        (Some(label), _) => match CaseLabel::from_str(label) {
            Ok(l) => (
                format!("fixture {l} (seed {})", a.seed),
                case_fixture(l).instantiate(a.seed, prec),
            ),
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        },
        (None, Some(path)) => match read_matrix(path, prec) {
            Ok(m) => (format!("matrix {}", path.display()), m),
            Err(o) => return o,
        },
        (None, None) => return Outcome::error(EXIT_USAGE, "give --fixture or --matrix"),
    };
    let vars = m.var_names();
    let report = match colength_over(&a.field, &minors(&m), a.cutoff) {
        Ok(r) => r,
        Err(e) => return Outcome::error(EXIT_FAIL, e),
    };
    let basis = render_basis(vars, &report.basis);
    let rows: Vec<Vec<String>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|e| e.render(vars)).collect())
        .collect();
    let note = format!(
        "accepted because cutoffs {} and {} agree; this is a heuristic completeness check",
        report.cutoff,
        report.cutoff + 1
    );
    let stdout = if a.json {
        json_text(&json!({
            "source": source,
            "field": field_name(&a.field),
            "vars": vars,
            "matrix": rows,
            "cutoff": report.cutoff,
            "multiplicity": report.colength,
            "basis": basis,
            "note": note,
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "source: {source}");
        let _ = writeln!(s, "field: {}", field_name(&a.field));
        for r in &rows {
            let _ = writeln!(s, "  [{}]", r.join(", "));
        }
        let _ = writeln!(s, "basis: {}", basis.join(", "));
        let _ = writeln!(s, "note: {note}");
        let _ = writeln!(s, "multiplicity: {}", report.colength);
        s
    };
    Outcome::ok(stdout)
}

fn read_matrix(path: &Path, prec: u32) -> Result<GermMatrix, Outcome> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_matrix_file(&src, prec).map_err(|d| {
        let mut o = Outcome::error(EXIT_USAGE, format!("{}: {d}", path.display()));
        if let Some(line) = src.lines().nth(d.pos.line.saturating_sub(1)) {
            let _ = writeln!(
                o.stderr,
                "  {line}\n  {}^",
                " ".repeat(d.pos.col.saturating_sub(1))
            );
        }
        o
    })
}

// ---- weierstrass ----

struct PointReport {
    x: String,
    y: String,
    rank: usize,
}

enum WError {
    Usage(String),
    Engine(String),
}

impl From<JetError> for WError {
    fn from(e: JetError) -> Self {
        match e {
            JetError::PointNotOnCurve { .. } | JetError::BadDegree(_) | JetError::NotSquarefree => {
                WError::Usage(e.to_string())
            }
            _ => WError::Engine(e.to_string()),
        }
    }
}

fn diag(origin: &str, d: Diagnostic) -> WError {
    WError::Usage(format!("{origin}: {d}"))
}

fn scan<F: Field>(
    field: F,
    generator: Option<(&str, F::Elem)>,
    a: &WeierstrassArgs,
) -> Result<(String, Vec<PointReport>), WError> {
    let scalars = FieldArith {
        field: &field,
        generator: generator.clone(),
    };
    let poly = UPolyArith { var: "x", scalars };
    let e = crate::expr::parse(&a.f).map_err(|d| diag("--f", d))?;
    let coeffs = eval_arith(&poly, &e).map_err(|d| diag("--f", d))?;
    let curve = HyperellipticCurve::new(field.clone(), coeffs)?;
    let k = curve.field();
    let rendered = render_upoly(k, curve.coefficients());
    let mut out = Vec::new();
    if a.scan_all {
        for p in curve.affine_points()? {
            out.push(PointReport {
                x: k.format(&p.x),
                y: k.format(&p.y),
                rank: degeneracy_rank(&curve, &p)?,
            });
        }
        return Ok((rendered, out));
    }
    let path = a.points.as_ref().expect("clap enforces a candidate source");
    let src = std::fs::read_to_string(path)
        .map_err(|e| WError::Usage(format!("{}: {e}", path.display())))?;
    let origin = path.display().to_string();
    let scalars = FieldArith {
        field: k,
        generator,
    };
    for (i, full) in src.lines().enumerate() {
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = content.split(',').collect();
        let mut vals = Vec::new();
        let mut offset = 0;
        for cell in &cells {
            let e = parse_at(
                cell,
                Pos {
                    line: i + 1,
                    col: offset + 1,
                },
            )
            .map_err(|d| diag(&origin, d))?;
            vals.push(eval_arith(&scalars, &e).map_err(|d| diag(&origin, d))?);
            offset += cell.chars().count() + 1;
        }
        match vals.as_slice() {
            [x, y] => {
                let p = CurvePoint::new(x.clone(), y.clone());
                out.push(PointReport {
                    x: k.format(x),
                    y: k.format(y),
                    rank: degeneracy_rank(&curve, &p)
                        .map_err(|e| WError::Usage(format!("{origin}:{}: {e}", i + 1)))?,
                });
            }
            [x] => {
                let y = match k.sqrt(&curve.eval(x)) {
                    Some(y) => k.format(&y),
                    None => format!("sqrt({})", k.format(&curve.eval(x))),
                };
                out.push(PointReport {
                    x: k.format(x),
                    y,
                    rank: rank_at_abscissa(&curve, x)?,
                });
            }
            _ => {
                return Err(WError::Usage(format!(
                    "{origin}:{}: expected `x, y` or `x`",
                    i + 1
                )))
            }
        }
    }
    Ok((rendered, out))
}

fn render_upoly<F: Field>(k: &F, c: &[F::Elem]) -> String {
    let mut terms = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if k.is_zero(a) {
            continue;
        }
        let coeff = k.format(a);
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        let simple = !coeff.contains([' ', '*']) && !coeff.starts_with('-');
        let c = if simple {
            coeff.clone()
        } else {
            format!("({coeff})")
        };
        terms.push(match (mono.is_empty(), coeff.as_str()) {
            (true, _) => c,
            (false, "1") => mono,
            (false, _) => format!("{c}*{mono}"),
        });
    }
    terms.join(" + ")
}

pub fn weierstrass(a: &WeierstrassArgs) -> Outcome {
    let result = match &a.field {
        FieldSpec::Q => scan(Rationals, None, a),
        FieldSpec::Fp(p) => match PrimeField::new(*p) {
            Ok(k) => scan(k, None, a),
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        },
        FieldSpec::QuadExt(d) => match QuadExt::new(Rationals, d.clone()) {
            Ok(k) => {
                let w = k.generator();
                scan(k, Some(("w", w)), a)
            }
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        },
    };
    let (curve, points) = match result {
        Ok(r) => r,
        Err(WError::Usage(m)) => return Outcome::error(EXIT_USAGE, m),
        Err(WError::Engine(m)) => return Outcome::error(EXIT_FAIL, m),
    };
    let degenerate = points.iter().filter(|p| p.rank <= 1).count();
    let stdout = if a.json {
        json_text(&json!({
            "curve": format!("y^2 = {curve}"),
            "field": field_name(&a.field),
            "points": points.iter().map(|p| json!({
                "x": p.x, "y": p.y, "rank": p.rank, "weierstrass": p.rank <= 1,
            })).collect::<Vec<_>>(),
            "degenerate": degenerate,
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "curve: y^2 = {curve}");
        let _ = writeln!(s, "field: {}", field_name(&a.field));
        for p in &points {
            let mark = if p.rank <= 1 { "  weierstrass" } else { "" };
            let _ = writeln!(s, "({}, {})  rank {}{mark}", p.x, p.y, p.rank);
        }
        let _ = writeln!(s, "degenerate points: {degenerate} of {}", points.len());
        s
    };
    Outcome::ok(stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!("q".parse::<FieldSpec>(), Ok(FieldSpec::Q));
        assert_eq!("fp:17".parse::<FieldSpec>(), Ok(FieldSpec::Fp(17)));
        assert!("fp:15".parse::<FieldSpec>().is_err());
        assert!("quadext:4".parse::<FieldSpec>().is_err());
        assert!("quadext:-1".parse::<FieldSpec>().is_ok());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn overrides_parse() {
        assert_eq!(parse_override("Z_node=0"), Ok((CaseLabel::ZNode, 0)));
        assert!(parse_override("Z_node").is_err());
        assert!(parse_override("nope=1").is_err());
        assert!(parse_override("Z_node=-1").is_err());
    }

    #[test]
    fn matrix_file_positions() {
        let m = parse_matrix_file("vars t u\n1, t, u\nt, u^2, 0\n", 5).unwrap();
        assert_eq!(m.var_names(), ["t", "u"]);
        let err = parse_matrix_file("vars t u\n1, t, v\n", 5).unwrap_err();
        assert_eq!((err.pos.line, err.pos.col), (2, 7));
        assert!(parse_matrix_file("vars t u\n1, t\n0, 0, 0\n", 5).is_err());
        assert!(parse_matrix_file("1, t, u\n", 5).is_err());
    }
}
