//! Type checking and evaluation of Chern-class expressions against a setup.

use std::fmt;

use h3calc::chern::{porteous, ChernSeries};
use h3calc::graded_algebra::ChowClass;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::config::{BaseClass, SetupConfig};
use crate::expr::{as_small_int, display_name, Diagnostic, Expr, ExprKind, Func, Pos};

/// Static type of an expression. `Class(None)` is an inhomogeneous class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Scalar,
    Class(Option<u32>),
    Series,
    Base,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Scalar => f.write_str("scalar"),
            Ty::Class(Some(d)) => write!(f, "class of degree {d}"),
            Ty::Class(None) => f.write_str("inhomogeneous class"),
            Ty::Series => f.write_str("Chern series"),
            Ty::Base => f.write_str("base class"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(BigRational),
    Class(ChowClass),
    Series(ChernSeries),
    Base(BaseClass),
}

pub struct Evaluator<'a> {
    cfg: &'a SetupConfig,
}

fn type_err(pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::type_error(pos, msg)
}

/// Degree of a scalar or homogeneous class when used additively.
fn additive_degree(t: Ty) -> Option<Option<u32>> {
    match t {
        Ty::Scalar => Some(Some(0)),
        Ty::Class(d) => Some(d),
        Ty::Series => Some(None),
        Ty::Base => None,
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(cfg: &'a SetupConfig) -> Self {
        Self { cfg }
    }

    fn truncation(&self) -> u32 {
        self.cfg.ring.truncation()
    }

    /// Common degree of the monomials the pushforward is defined on.
    fn push_degree(&self) -> Option<u32> {
        let mut degs = self
            .cfg
            .pushforward
            .keys()
            .map(|m| self.cfg.ring.degree_of(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    fn bundle_arg<'e>(&self, e: &'e Expr) -> Result<&'a crate::config::Bundle, Diagnostic> {
        match &e.kind {
            ExprKind::Var(v) => self
                .cfg
                .bundle(v)
                .ok_or_else(|| type_err(e.pos, format!("`{v}` is not a bundle"))),
            _ => Err(type_err(e.pos, "expected a bundle name")),
        }
    }

    fn small_int_arg(&self, e: &Expr, what: &str) -> Result<u32, Diagnostic> {
        as_small_int(e).ok_or_else(|| {
            type_err(
                e.pos,
                format!("{what} must be a nonnegative integer literal"),
            )
        })
    }

    pub fn check(&self, e: &Expr) -> Result<Ty, Diagnostic> {
        let pos = e.pos;
        match &e.kind {
            ExprKind::Num(_) => Ok(Ty::Scalar),
            ExprKind::Var(v) => {
                if let Some(g) = self.cfg.ring.generators().iter().find(|g| &g.name == v) {
                    Ok(Ty::Class(Some(g.degree)))
                } else if self.cfg.is_base_symbol(v) {
                    Ok(Ty::Base)
                } else if self.cfg.bundle(v).is_some() {
                    Err(type_err(
                        pos,
                        format!("bundle `{v}` must be used as c({v}) or cI({v})"),
                    ))
                } else {
                    Err(type_err(
                        pos,
                        format!("unknown identifier `{}`", display_name(v)),
                    ))
                }
            }
            ExprKind::Neg(x) => self.check(x),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let (ta, tb) = (self.check(a)?, self.check(b)?);
                match (ta, tb) {
                    (Ty::Scalar, Ty::Scalar) => Ok(Ty::Scalar),
                    (Ty::Base, Ty::Base) => Ok(Ty::Base),
                    (Ty::Base, _) | (_, Ty::Base) => {
                        Err(type_err(pos, format!("cannot add a {ta} and a {tb}")))
                    }
                    _ => match (additive_degree(ta).flatten(), additive_degree(tb).flatten()) {
                        (Some(x), Some(y)) if x != y => Err(type_err(
                            b.pos,
                            format!("cannot add classes of degree {x} and {y}"),
                        )),
                        (Some(x), Some(_)) => Ok(Ty::Class(Some(x))),
                        _ => Ok(Ty::Class(None)),
                    },
                }
            }
            ExprKind::Mul(a, b) => {
                let (ta, tb) = (self.check(a)?, self.check(b)?);
                match (ta, tb) {
                    (Ty::Scalar, t) | (t, Ty::Scalar) => Ok(t),
                    (Ty::Series, Ty::Series) => Ok(Ty::Series),
                    (Ty::Base, _) | (_, Ty::Base) => {
                        Err(type_err(pos, format!("cannot multiply a {ta} by a {tb}")))
                    }
                    (Ty::Class(Some(x)), Ty::Class(Some(y))) => Ok(Ty::Class(Some(x + y))),
                    _ => Ok(Ty::Class(None)),
                }
            }
            ExprKind::Pow(x, n) => match (self.check(x)?, *n) {
                (_, 0) => Ok(Ty::Scalar),
                (Ty::Base, 1) => Ok(Ty::Base),
                (Ty::Base, _) => Err(type_err(pos, "base classes cannot be multiplied")),
                (Ty::Class(Some(d)), n) => Ok(Ty::Class(Some(d * n))),
                (t, _) => Ok(t),
            },
            ExprKind::Call(f, args) => {
                if args.len() != f.arity() {
                    return Err(type_err(
                        pos,
                        format!(
                            "`{}` takes {} argument(s), got {}",
                            f.name(),
                            f.arity(),
                            args.len()
                        ),
                    ));
                }
                self.check_call(*f, args, pos)
            }
        }
    }

    fn check_call(&self, f: Func, args: &[Expr], pos: Pos) -> Result<Ty, Diagnostic> {
        match f {
            Func::Total => {
                self.bundle_arg(&args[0])?;
                Ok(Ty::Series)
            }
            Func::Chern(i) => {
                self.bundle_arg(&args[0])?;
                if i > self.truncation() {
                    return Err(type_err(
                        pos,
                        format!("c{i} exceeds the ring truncation {}", self.truncation()),
                    ));
                }
                Ok(Ty::Class(Some(i)))
            }
            Func::Dual | Func::Inv => match self.check(&args[0])? {
                Ty::Series => Ok(Ty::Series),
                t => Err(type_err(
                    args[0].pos,
                    format!("`{}` expects a Chern series, got a {t}", f.name()),
                )),
            },
            Func::Part => {
                match self.check(&args[0])? {
                    Ty::Series | Ty::Class(_) | Ty::Scalar => {}
                    t => {
                        return Err(type_err(
                            args[0].pos,
                            format!("`part` expects a class, got a {t}"),
                        ))
                    }
                }
                let d = self.small_int_arg(&args[1], "degree")?;
                if d > self.truncation() {
                    return Err(type_err(
                        args[1].pos,
                        format!(
                            "degree {d} exceeds the ring truncation {}",
                            self.truncation()
                        ),
                    ));
                }
                Ok(Ty::Class(Some(d)))
            }
            Func::Porteous => {
                let e = self.bundle_arg(&args[0])?;
                let fb = self.bundle_arg(&args[1])?;
                let k = self.small_int_arg(&args[2], "rank bound")?;
                let (er, fr) = match (u32::try_from(e.rank), u32::try_from(fb.rank)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => return Err(type_err(pos, "porteous needs bundles of nonnegative rank")),
                };
                if k >= er.min(fr) {
                    return Err(type_err(
                        args[2].pos,
                        format!("rank bound {k} must be below min({er}, {fr})"),
                    ));
                }
                let codim = (er - k) * (fr - k);
                if codim > self.truncation() {
                    return Err(type_err(
                        pos,
                        format!(
                            "codimension {codim} exceeds the ring truncation {}",
                            self.truncation()
                        ),
                    ));
                }
                Ok(Ty::Class(Some(codim)))
            }
            Func::Push => {
                let Some(pd) = self.push_degree() else {
                    return Err(type_err(
                        pos,
                        "the setup declares no consistent pushforward",
                    ));
                };
                match self.check(&args[0])? {
                    Ty::Class(Some(d)) if d == pd => Ok(Ty::Base),
                    t => Err(type_err(
                        args[0].pos,
                        format!("`push` expects a class of degree {pd}, got a {t}"),
                    )),
                }
            }
            Func::Subst => match self.check(&args[0])? {
                Ty::Base => Ok(Ty::Base),
                t => Err(type_err(
                    args[0].pos,
                    format!("`subst` expects a base class, got a {t}"),
                )),
            },
        }
    }

    /// Type checks, then evaluates.
    pub fn run(&self, e: &Expr) -> Result<Value, Diagnostic> {
        self.check(e)?;
        self.eval(e)
    }

    fn as_class(&self, v: Value) -> ChowClass {
        match v {
            Value::Scalar(q) => self.cfg.ring.scalar(q),
            Value::Class(c) => c,
            Value::Series(s) => s.total(),
            Value::Base(_) => unreachable!("rejected by the type checker"),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Value, Diagnostic> {
        let pos = e.pos;
        let chern = |r: Result<_, h3calc::chern::ChernError>| {
            r.map_err(|err| Diagnostic::eval(pos, err.to_string()))
        };
        Ok(match &e.kind {
            ExprKind::Num(q) => Value::Scalar(q.clone()),
            ExprKind::Var(v) => match self.cfg.ring.generator(v) {
                Ok(c) => Value::Class(c),
                Err(_) => Value::Base(BaseClass::symbol(v)),
            },
            ExprKind::Neg(x) => match self.eval(x)? {
                Value::Scalar(q) => Value::Scalar(-q),
                Value::Base(b) => Value::Base(b.scale(&-BigRational::one())),
                v => Value::Class(-self.as_class(v)),
            },
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let x = self.eval(a)?;
                let mut y = self.eval(b)?;
                if matches!(e.kind, ExprKind::Sub(..)) {
                    y = match y {
                        Value::Scalar(q) => Value::Scalar(-q),
                        Value::Base(b) => Value::Base(b.scale(&-BigRational::one())),
                        v => Value::Class(-self.as_class(v)),
                    };
                }
                match (x, y) {
                    (Value::Scalar(p), Value::Scalar(q)) => Value::Scalar(p + q),
                    (Value::Base(p), Value::Base(q)) => Value::Base(p.add(&q)),
                    (x, y) => Value::Class(self.as_class(x) + self.as_class(y)),
                }
            }
            ExprKind::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Value::Scalar(p), Value::Scalar(q)) => Value::Scalar(p * q),
                (Value::Scalar(s), Value::Base(b)) | (Value::Base(b), Value::Scalar(s)) => {
                    Value::Base(b.scale(&s))
                }
                (Value::Scalar(s), Value::Series(c)) | (Value::Series(c), Value::Scalar(s)) => {
                    Value::Class(c.total().scale(&s))
                }
                (Value::Series(p), Value::Series(q)) => Value::Series(chern(p.whitney(&q))?),
                (x, y) => Value::Class(self.as_class(x) * self.as_class(y)),
            },
            ExprKind::Pow(x, n) => {
                let base = self.eval(x)?;
                if *n == 0 {
                    return Ok(Value::Scalar(BigRational::one()));
                }
                match base {
                    Value::Scalar(q) => Value::Scalar(num_traits::pow(q, *n as usize)),
                    Value::Base(b) => Value::Base(b),
                    Value::Series(s) => {
                        let mut acc = s.clone();
                        for _ in 1..*n {
                            acc = chern(acc.whitney(&s))?;
                        }
                        Value::Series(acc)
                    }
                    Value::Class(c) => Value::Class(c.pow(*n)),
                }
            }
            ExprKind::Call(f, args) => self.eval_call(*f, args, pos)?,
        })
    }

    fn eval_call(&self, f: Func, args: &[Expr], pos: Pos) -> Result<Value, Diagnostic> {
        let bundle = |e: &Expr| self.bundle_arg(e);
        let chern_err = |err: h3calc::chern::ChernError| Diagnostic::eval(pos, err.to_string());
        Ok(match f {
            Func::Total => Value::Series(bundle(&args[0])?.series.clone()),
            Func::Chern(i) => Value::Class(bundle(&args[0])?.series.c(i as i64)),
            Func::Dual => match self.eval(&args[0])? {
                Value::Series(s) => Value::Series(s.dual()),
                _ => unreachable!("rejected by the type checker"),
            },
            Func::Inv => match self.eval(&args[0])? {
                Value::Series(s) => Value::Series(s.inverse()),
                _ => unreachable!("rejected by the type checker"),
            },
            Func::Part => {
                let d = as_small_int(&args[1]).expect("checked literal");
                let c = self.as_class(self.eval(&args[0])?).normalize();
                Value::Class(
                    c.graded_part(d)
                        .map_err(|err| Diagnostic::eval(pos, err.to_string()))?,
                )
            }
            Func::Porteous => {
                let (e, fb) = (bundle(&args[0])?, bundle(&args[1])?);
                let k = as_small_int(&args[2]).expect("checked literal");
                Value::Class(
                    porteous(&e.series, &fb.series, e.rank as u32, fb.rank as u32, k)
                        .map_err(chern_err)?,
                )
            }
            Func::Push => {
                let c = self.as_class(self.eval(&args[0])?).normalize();
                let mut out = BaseClass::default();
                for (m, q) in c.terms() {
                    let image = self.cfg.pushforward.get(m).ok_or_else(|| {
                        Diagnostic::eval(
                            args[0].pos,
                            format!(
                                "no pushforward rule for `{}`",
                                self.cfg.ring.render_monomial(m)
                            ),
                        )
                    })?;
                    out = out.add(&image.scale(q));
                }
                Value::Base(out)
            }
            Func::Subst => match self.eval(&args[0])? {
                Value::Base(b) => Value::Base(self.cfg.substitute(&b)),
                _ => unreachable!("rejected by the type checker"),
            },
        })
    }

    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Scalar(q) => self.cfg.ring.scalar(q.clone()).to_string(),
            Value::Class(c) => c.to_string(),
            Value::Series(s) => s.total().to_string(),
            Value::Base(b) => self.cfg.render_base(b),
        }
    }

    pub fn to_json(&self, e: &Expr, v: &Value) -> Json {
        let (kind, detail) = match v {
            Value::Scalar(q) => ("scalar", json!({ "value": q.to_string() })),
            Value::Class(c) => ("class", class_json(c)),
            Value::Series(s) => (
                "series",
                json!({
                    "rank": s.rank(),
                    "parts": s.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }),
            ),
            Value::Base(b) => (
                "base",
                json!({
                    "coefficients": b
                        .ordered(&self.cfg.base)
                        .into_iter()
                        .map(|(n, c)| json!({ "symbol": n, "coefficient": c.to_string() }))
                        .collect::<Vec<_>>(),
                }),
            ),
        };
        json!({
            "expr": e.to_string(),
            "kind": kind,
            "display": self.render(v),
            "detail": detail,
        })
    }
}

fn class_json(c: &ChowClass) -> Json {
    let ring = c.ring();
    json!({
        "degree": c.max_degree(),
        "terms": c
            .sorted_terms()
            .into_iter()
            .map(|(m, q)| json!({
                "monomial": if m.is_unit() { "1".to_string() } else { ring.render_monomial(m) },
                "coefficient": q.to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

/// Parses, checks and evaluates `src` against `cfg`.
pub fn evaluate(cfg: &SetupConfig, src: &str) -> Result<(Expr, Value), Diagnostic> {
    let e = crate::expr::parse(src)?;
    let v = Evaluator::new(cfg).run(&e)?;
    Ok((e, v))
}

/// `true` when `v` is the zero class or scalar.
pub fn is_zero(v: &Value) -> bool {
    match v {
        Value::Scalar(q) => q.is_zero(),
        Value::Class(c) => c.is_zero(),
        Value::Series(_) => false,
        Value::Base(b) => b.0.is_empty(),
    }
}
