//! Setup files describing a Chow ring, bundles, a pushforward and base-class
//! substitutions.
//!
//! Text form, one declaration per line, `#` starts a comment:
//!
//! ```text
//! truncation = 2
//! [generators]
//! K = 1
//! [rules]
//! K^3 -> 0
//! [bundles]
//! E rank 2 = 1 + 2*K
//! [pushforward]
//! K^2 -> kappa
//! [base]
//! kappa, lambda
//! [subst]
//! kappa -> 12*lambda
//! ```
//!
//! The JSON mirror has keys `truncation`, `generators` (`{name, degree}`),
//! `rules`, `bundles` (`{name, rank, total}`), `pushforward`, `base` and
//! `subst`, with rules written as in the text form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use h3calc::chern::ChernSeries;
use h3calc::graded_algebra::{ChowClass, Generator, Monomial, RewriteRule, Ring};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::arith::{eval_arith, Arith, NamedPoly, NamedPolyArith};
use crate::expr::{canonical_name, display_name, parse_at, Diagnostic, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<Diagnostic> for ConfigError {
    fn from(d: Diagnostic) -> Self {
        ConfigError(d.to_string())
    }
}

fn at(pos: Pos, msg: impl fmt::Display) -> ConfigError {
    ConfigError(format!("{pos}: {msg}"))
}

/// A rational combination of base classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaseClass(pub BTreeMap<String, BigRational>);

impl BaseClass {
    pub fn symbol(name: &str) -> Self {
        BaseClass(BTreeMap::from([(name.to_string(), BigRational::one())]))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            *m.entry(k.clone()).or_insert_with(BigRational::zero) += v;
        }
        m.retain(|_, v| !v.is_zero());
        BaseClass(m)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut m: BTreeMap<_, _> = self.0.iter().map(|(k, v)| (k.clone(), v * q)).collect();
        m.retain(|_, v: &mut BigRational| !v.is_zero());
        BaseClass(m)
    }

    pub fn coefficient(&self, name: &str) -> BigRational {
        self.0.get(name).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in the given symbol order, unknown symbols last by name.
    pub fn ordered<'a>(&'a self, order: &[String]) -> Vec<(&'a str, &'a BigRational)> {
        let rank = |s: &str| order.iter().position(|o| o == s).unwrap_or(usize::MAX);
        let mut v: Vec<_> = self.0.iter().map(|(k, c)| (k.as_str(), c)).collect();
        v.sort_by(|a, b| rank(a.0).cmp(&rank(b.0)).then(a.0.cmp(b.0)));
        v
    }

    /// `72λ - 7δ0 - 7δ1` style rendering.
    pub fn render(&self, order: &[String]) -> String {
        let mut out = String::new();
        for (name, c) in self.ordered(order) {
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let a = c.abs();
            if !a.is_one() {
                if a.is_integer() {
                    out.push_str(&a.to_string());
                } else {
                    out.push_str(&format!("({a})"));
                }
            }
            out.push_str(display_name(name));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Linear combinations of base symbols, with bare numbers as scalars.
#[derive(Debug, Clone)]
enum Lin {
    Scalar(BigRational),
    Class(BaseClass),
}

struct LinArith<'a> {
    is_symbol: &'a dyn Fn(&str) -> bool,
}

impl Arith for LinArith<'_> {
    type V = Lin;

    fn num(&self, q: &BigRational, _: Pos) -> Result<Lin, Diagnostic> {
        Ok(Lin::Scalar(q.clone()))
    }

    fn var(&self, name: &str, pos: Pos) -> Result<Lin, Diagnostic> {
        if (self.is_symbol)(name) {
            Ok(Lin::Class(BaseClass::symbol(name)))
        } else {
            Err(Diagnostic::type_error(
                pos,
                format!("`{name}` is not a base class"),
            ))
        }
    }

    fn add(&self, a: Lin, b: Lin, pos: Pos) -> Result<Lin, Diagnostic> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(x + y)),
            (Lin::Class(x), Lin::Class(y)) => Ok(Lin::Class(x.add(&y))),
            (Lin::Scalar(s), c) | (c, Lin::Scalar(s)) if s.is_zero() => Ok(c),
            _ => Err(Diagnostic::type_error(
                pos,
                "cannot add a number to a base class",
            )),
        }
    }

    fn neg(&self, a: Lin, _: Pos) -> Result<Lin, Diagnostic> {
        Ok(match a {
            Lin::Scalar(x) => Lin::Scalar(-x),
            Lin::Class(c) => Lin::Class(c.scale(&-BigRational::one())),
        })
    }

    fn mul(&self, a: Lin, b: Lin, pos: Pos) -> Result<Lin, Diagnostic> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(x * y)),
            (Lin::Scalar(s), Lin::Class(c)) | (Lin::Class(c), Lin::Scalar(s)) => {
                Ok(Lin::Class(c.scale(&s)))
            }
            _ => Err(Diagnostic::type_error(
                pos,
                "base classes cannot be multiplied",
            )),
        }
    }
}

/// Classes in a built ring, allowing inhomogeneous sums.
struct ClassArith<'a> {
    ring: &'a Ring,
}

impl Arith for ClassArith<'_> {
    type V = ChowClass;

    fn num(&self, q: &BigRational, _: Pos) -> Result<ChowClass, Diagnostic> {
        Ok(self.ring.scalar(q.clone()))
    }

    fn var(&self, name: &str, pos: Pos) -> Result<ChowClass, Diagnostic> {
        self.ring
            .generator(name)
            .map_err(|e| Diagnostic::type_error(pos, e.to_string()))
    }

    fn add(&self, a: ChowClass, b: ChowClass, _: Pos) -> Result<ChowClass, Diagnostic> {
        Ok(&a + &b)
    }

    fn neg(&self, a: ChowClass, _: Pos) -> Result<ChowClass, Diagnostic> {
        Ok(-&a)
    }

    fn mul(&self, a: ChowClass, b: ChowClass, _: Pos) -> Result<ChowClass, Diagnostic> {
        Ok(&a * &b)
    }
}

#[derive(Debug, Clone)]
pub struct Bundle {
    pub name: String,
    pub rank: i64,
    pub series: ChernSeries,
}

/// A validated setup.
#[derive(Debug, Clone)]
pub struct SetupConfig {
    pub ring: Ring,
    pub bundles: Vec<Bundle>,
    pub pushforward: HashMap<Monomial, BaseClass>,
    pub base: Vec<String>,
    pub subst: Vec<(String, BaseClass)>,
}

/// Declarations before validation; `Pos` marks where each text begins.
#[derive(Debug, Clone, Default)]
struct RawConfig {
    truncation: Option<(u32, Pos)>,
    generators: Vec<(String, u32, Pos)>,
    rules: Vec<(String, Pos)>,
    bundles: Vec<(String, i64, String, Pos)>,
    pushforward: Vec<(String, Pos)>,
    base: Vec<(String, Pos)>,
    subst: Vec<(String, Pos)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonConfig {
    truncation: u32,
    generators: Vec<JsonGenerator>,
    #[serde(default)]
    rules: Vec<String>,
    #[serde(default)]
    bundles: Vec<JsonBundle>,
    #[serde(default)]
    pushforward: Vec<String>,
    #[serde(default)]
    base: Vec<String>,
    #[serde(default)]
    subst: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGenerator {
    name: String,
    degree: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonBundle {
    name: String,
    rank: i64,
    total: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Top,
    Generators,
    Rules,
    Bundles,
    Pushforward,
    Base,
    Subst,
}

fn col(p: Pos, offset_chars: usize) -> Pos {
    Pos {
        line: p.line,
        col: p.col + offset_chars,
    }
}

fn parse_text(src: &str) -> Result<RawConfig, ConfigError> {
    let mut raw = RawConfig::default();
    let mut section = Section::Top;
    for (i, full) in src.lines().enumerate() {
        let line_no = i + 1;
        let content = full.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        let pos = Pos {
            line: line_no,
            col: indent + 1,
        };
        if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "generators" => Section::Generators,
                "rules" => Section::Rules,
                "bundles" => Section::Bundles,
                "pushforward" => Section::Pushforward,
                "base" => Section::Base,
                "subst" => Section::Subst,
                other => return Err(at(pos, format!("unknown section [{other}]"))),
            };
            continue;
        }
        match section {
            Section::Top => {
                let (k, v) = trimmed
                    .split_once('=')
                    .ok_or_else(|| at(pos, "expected `truncation = N` before the first section"))?;
                if k.trim() != "truncation" {
                    return Err(at(pos, format!("unknown setting `{}`", k.trim())));
                }
                let t = v
                    .trim()
                    .parse()
                    .map_err(|_| at(pos, "truncation must be a nonnegative integer"))?;
                raw.truncation = Some((t, pos));
            }
            Section::Generators => {
                let (k, v) = trimmed
                    .split_once('=')
                    .ok_or_else(|| at(pos, "expected `NAME = DEGREE`"))?;
                let d = v
                    .trim()
                    .parse()
                    .map_err(|_| at(pos, "degree must be a nonnegative integer"))?;
                raw.generators.push((canonical_name(k.trim()), d, pos));
            }
            Section::Rules => raw.rules.push((trimmed.to_string(), pos)),
            Section::Pushforward => raw.pushforward.push((trimmed.to_string(), pos)),
            Section::Subst => raw.subst.push((trimmed.to_string(), pos)),
            Section::Base => {
                for s in trimmed.split([',', ' ']).filter(|s| !s.is_empty()) {
                    raw.base.push((canonical_name(s), pos));
                }
            }
            Section::Bundles => {
                let (head, total) = trimmed
                    .split_once('=')
                    .ok_or_else(|| at(pos, "expected `NAME rank R = TOTAL`"))?;
                let words: Vec<&str> = head.split_whitespace().collect();
                let [name, "rank", r] = words.as_slice() else {
                    return Err(at(pos, "expected `NAME rank R = TOTAL`"));
                };
                let rank = r.parse().map_err(|_| at(pos, "rank must be an integer"))?;
                let offset = head.chars().count() + 1;
                let lead = total.chars().take_while(|c| c.is_whitespace()).count();
                raw.bundles.push((
                    name.to_string(),
                    rank,
                    total.trim().to_string(),
                    col(pos, offset + lead),
                ));
            }
        }
    }
    Ok(raw)
}

fn parse_json(src: &str) -> Result<RawConfig, ConfigError> {
    let j: JsonConfig =
        serde_json::from_str(src).map_err(|e| ConfigError(format!("invalid JSON config: {e}")))?;
    // Positions in the JSON form count entries within their list.
    let entry = |i: usize| Pos {
        line: i + 1,
        col: 1,
    };
    Ok(RawConfig {
        truncation: Some((j.truncation, entry(0))),
        generators: j
            .generators
            .into_iter()
            .enumerate()
            .map(|(i, g)| (canonical_name(&g.name), g.degree, entry(i)))
            .collect(),
        rules: j
            .rules
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r, entry(i)))
            .collect(),
        bundles: j
            .bundles
            .into_iter()
            .enumerate()
            .map(|(i, b)| (b.name, b.rank, b.total, entry(i)))
            .collect(),
        pushforward: j
            .pushforward
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r, entry(i)))
            .collect(),
        base: j
            .base
            .into_iter()
            .enumerate()
            .map(|(i, b)| (canonical_name(&b), entry(i)))
            .collect(),
        subst: j
            .subst
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r, entry(i)))
            .collect(),
    })
}

/// Splits `lhs -> rhs` and parses both halves with positions in the file.
fn parse_arrow(
    text: &str,
    pos: Pos,
) -> Result<(crate::expr::Expr, crate::expr::Expr), ConfigError> {
    let (l, r) = text
        .split_once("->")
        .ok_or_else(|| at(pos, "expected `LHS -> RHS`"))?;
    let lhs = parse_at(l, pos)?;
    let rhs = parse_at(r, col(pos, l.chars().count() + 2))?;
    Ok((lhs, rhs))
}

impl SetupConfig {
    /// Parses the text form, or the JSON mirror if the source is a JSON object.
    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        let raw = if src.trim_start().starts_with('{') {
            parse_json(src)?
        } else {
            parse_text(src)?
        };
        Self::build(raw)
    }

    fn build(raw: RawConfig) -> Result<Self, ConfigError> {
        let (truncation, _) = raw
            .truncation
            .ok_or_else(|| ConfigError("missing `truncation = N`".into()))?;
        let gens: Vec<Generator> = raw
            .generators
            .iter()
            .map(|(n, d, _)| Generator::new(n.clone(), *d))
            .collect();
        let is_gen = |s: &str| gens.iter().any(|g| g.name == s);
        let poly = NamedPolyArith {
            allowed: &is_gen,
            what: "generator",
        };

        let mut rules = Vec::new();
        for (text, pos) in &raw.rules {
            let (l, r) = parse_arrow(text, *pos)?;
            let lhs: NamedPoly = eval_arith(&poly, &l)?;
            let lhs = lhs
                .single_monomial()
                .ok_or_else(|| at(l.pos, "rule left side must be a single monomial"))?
                .to_vec();
            let rhs = eval_arith(&poly, &r)?;
            rules.push(RewriteRule::new(
                &lhs,
                rhs.0.into_iter().map(|(m, c)| (c, m)).collect(),
            ));
        }
        let ring =
            Ring::new(gens.clone(), rules, truncation).map_err(|e| ConfigError(e.to_string()))?;
        ring.check_confluence()
            .map_err(|e| ConfigError(e.to_string()))?;

        let mut bundles: Vec<Bundle> = Vec::new();
        for (name, rank, text, pos) in &raw.bundles {
            if is_gen(name) || bundles.iter().any(|b| &b.name == name) {
                return Err(at(*pos, format!("bundle name `{name}` is already in use")));
            }
            let e = parse_at(text, *pos)?;
            let total = eval_arith(&ClassArith { ring: &ring }, &e)?;
            let series = ChernSeries::from_total(*rank, &total).map_err(|err| at(*pos, err))?;
            bundles.push(Bundle {
                name: name.clone(),
                rank: *rank,
                series,
            });
        }

        let declared: Vec<String> = raw.base.iter().map(|(n, _)| n.clone()).collect();
        for (n, pos) in &raw.base {
            if is_gen(n) {
                return Err(at(
                    *pos,
                    format!("`{n}` is both a generator and a base class"),
                ));
            }
        }
        let is_symbol =
            |s: &str| !is_gen(s) && (declared.is_empty() || declared.iter().any(|d| d == s));
        let lin = LinArith {
            is_symbol: &is_symbol,
        };
        let to_base = |e: &crate::expr::Expr| -> Result<BaseClass, ConfigError> {
            match eval_arith(&lin, e)? {
                Lin::Class(c) => Ok(c),
                Lin::Scalar(s) if s.is_zero() => Ok(BaseClass::default()),
                Lin::Scalar(_) => Err(at(e.pos, "expected a combination of base classes")),
            }
        };

        let mut pushforward = HashMap::new();
        let mut order = declared.clone();
        for (text, pos) in &raw.pushforward {
            let (l, r) = parse_arrow(text, *pos)?;
            let lhs = eval_arith(&poly, &l)?;
            let names = lhs
                .single_monomial()
                .ok_or_else(|| at(l.pos, "pushforward left side must be a single monomial"))?;
            let m = ring.monomial(names).map_err(|e| at(l.pos, e))?;
            let normal = ring.class_from_terms(vec![(m.clone(), BigRational::one())]);
            if normal.terms().count() != 1 || normal.coefficient(&m) != BigRational::one() {
                return Err(at(
                    l.pos,
                    format!("`{}` is not in normal form", ring.render_monomial(&m)),
                ));
            }
            let image = to_base(&r)?;
            for k in image.0.keys() {
                if !order.contains(k) {
                    order.push(k.clone());
                }
            }
            if pushforward.insert(m, image).is_some() {
                return Err(at(*pos, "duplicate pushforward rule"));
            }
        }

        let mut subst = Vec::new();
        for (text, pos) in &raw.subst {
            let (l, r) = parse_arrow(text, *pos)?;
            let sym = match &l.kind {
                crate::expr::ExprKind::Var(v) if is_symbol(v) => v.clone(),
                _ => return Err(at(l.pos, "substitution left side must be a base class")),
            };
            let image = to_base(&r)?;
            if image.0.contains_key(&sym) {
                return Err(at(r.pos, format!("`{sym}` occurs in its own substitution")));
            }
            for k in image.0.keys().chain(std::iter::once(&sym)) {
                if !order.contains(k) {
                    order.push(k.clone());
                }
            }
            subst.push((sym, image));
        }

        Ok(SetupConfig {
            ring,
            bundles,
            pushforward,
            base: order,
            subst,
        })
    }

    pub fn bundle(&self, name: &str) -> Option<&Bundle> {
        self.bundles.iter().find(|b| b.name == name)
    }

    pub fn is_base_symbol(&self, name: &str) -> bool {
        self.base.iter().any(|b| b == name)
    }

    /// Applies every substitution in order.
    pub fn substitute(&self, c: &BaseClass) -> BaseClass {
        let mut out = c.clone();
        for (sym, image) in &self.subst {
            let k = out.coefficient(sym);
            if !k.is_zero() {
                out.0.remove(sym);
                out = out.add(&image.scale(&k));
            }
        }
        out
    }

    pub fn render_base(&self, c: &BaseClass) -> String {
        c.render(&self.base)
    }
}

/// The family setup shipped with the tool.
pub const FAMILY_CONFIG: &str = include_str!("../data/h3.conf");
