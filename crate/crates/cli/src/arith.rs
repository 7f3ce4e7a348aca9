//! Evaluation of function-free expressions in an arbitrary arithmetic.

use std::collections::BTreeMap;

use h3calc::field::Field;
use h3calc::local_multiplicity::TruncSeries;
use h3calc::upoly;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::expr::{Diagnostic, Expr, ExprKind, Pos};

/// Values and operations for [`eval_arith`].
pub trait Arith {
    type V: Clone;

    fn num(&self, q: &BigRational, pos: Pos) -> Result<Self::V, Diagnostic>;
    fn var(&self, name: &str, pos: Pos) -> Result<Self::V, Diagnostic>;
    fn add(&self, a: Self::V, b: Self::V, pos: Pos) -> Result<Self::V, Diagnostic>;
    fn neg(&self, a: Self::V, pos: Pos) -> Result<Self::V, Diagnostic>;
    fn mul(&self, a: Self::V, b: Self::V, pos: Pos) -> Result<Self::V, Diagnostic>;
}

pub fn eval_arith<A: Arith>(a: &A, e: &Expr) -> Result<A::V, Diagnostic> {
    let pos = e.pos;
    match &e.kind {
        ExprKind::Num(q) => a.num(q, pos),
        ExprKind::Var(v) => a.var(v, pos),
        ExprKind::Neg(x) => a.neg(eval_arith(a, x)?, pos),
        ExprKind::Add(x, y) => a.add(eval_arith(a, x)?, eval_arith(a, y)?, pos),
        ExprKind::Sub(x, y) => {
            let y = a.neg(eval_arith(a, y)?, pos)?;
            a.add(eval_arith(a, x)?, y, pos)
        }
        ExprKind::Mul(x, y) => a.mul(eval_arith(a, x)?, eval_arith(a, y)?, pos),
        ExprKind::Pow(x, n) => {
            let base = eval_arith(a, x)?;
            let mut acc = a.num(&BigRational::one(), pos)?;
            for _ in 0..*n {
                acc = a.mul(acc, base.clone(), pos)?;
            }
            Ok(acc)
        }
        ExprKind::Call(f, _) => Err(Diagnostic::type_error(
            pos,
            format!("function `{}` is not allowed here", f.name()),
        )),
    }
}

/// Polynomials over the rationals in named variables; monomials are sorted
/// factor lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NamedPoly(pub BTreeMap<Vec<String>, BigRational>);

impl NamedPoly {
    pub fn single_monomial(&self) -> Option<&[String]> {
        match self.0.iter().next() {
            Some((m, c)) if self.0.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }
}

/// Arithmetic of [`NamedPoly`] with a whitelist of variable names.
pub struct NamedPolyArith<'a> {
    pub allowed: &'a dyn Fn(&str) -> bool,
    pub what: &'a str,
}

impl Arith for NamedPolyArith<'_> {
    type V = NamedPoly;

    fn num(&self, q: &BigRational, _: Pos) -> Result<NamedPoly, Diagnostic> {
        let mut m = BTreeMap::new();
        if !q.is_zero() {
            m.insert(Vec::new(), q.clone());
        }
        Ok(NamedPoly(m))
    }

    fn var(&self, name: &str, pos: Pos) -> Result<NamedPoly, Diagnostic> {
        if !(self.allowed)(name) {
            return Err(Diagnostic::type_error(
                pos,
                format!("`{name}` is not a {}", self.what),
            ));
        }
        Ok(NamedPoly(BTreeMap::from([(
            vec![name.to_string()],
            BigRational::one(),
        )])))
    }

    fn add(&self, a: NamedPoly, b: NamedPoly, _: Pos) -> Result<NamedPoly, Diagnostic> {
        let mut m = a.0;
        for (k, v) in b.0 {
            *m.entry(k).or_insert_with(BigRational::zero) += v;
        }
        m.retain(|_, v| !v.is_zero());
        Ok(NamedPoly(m))
    }

    fn neg(&self, a: NamedPoly, _: Pos) -> Result<NamedPoly, Diagnostic> {
        Ok(NamedPoly(a.0.into_iter().map(|(k, v)| (k, -v)).collect()))
    }

    fn mul(&self, a: NamedPoly, b: NamedPoly, _: Pos) -> Result<NamedPoly, Diagnostic> {
        let mut m: BTreeMap<Vec<String>, BigRational> = BTreeMap::new();
        for (ka, va) in &a.0 {
            for (kb, vb) in &b.0 {
                let mut k: Vec<String> = ka.iter().chain(kb).cloned().collect();
                k.sort();
                *m.entry(k).or_insert_with(BigRational::zero) += va * vb;
            }
        }
        m.retain(|_, v| !v.is_zero());
        Ok(NamedPoly(m))
    }
}

/// Truncated germs in two named variables.
pub struct GermArith<'a> {
    pub vars: [&'a str; 2],
    pub cutoff: u32,
}

impl Arith for GermArith<'_> {
    type V = TruncSeries;

    fn num(&self, q: &BigRational, _: Pos) -> Result<TruncSeries, Diagnostic> {
        Ok(TruncSeries::constant(q.clone(), self.cutoff))
    }

    fn var(&self, name: &str, pos: Pos) -> Result<TruncSeries, Diagnostic> {
        let exp = match self.vars.iter().position(|v| *v == name) {
            Some(0) => (1, 0),
            Some(_) => (0, 1),
            None => {
                return Err(Diagnostic::type_error(
                    pos,
                    format!(
                        "unknown variable `{name}` (declared: {}, {})",
                        self.vars[0], self.vars[1]
                    ),
                ))
            }
        };
        Ok(TruncSeries::monomial(exp, BigRational::one(), self.cutoff))
    }

    fn add(&self, a: TruncSeries, b: TruncSeries, _: Pos) -> Result<TruncSeries, Diagnostic> {
        Ok(&a + &b)
    }

    fn neg(&self, a: TruncSeries, _: Pos) -> Result<TruncSeries, Diagnostic> {
        Ok(-&a)
    }

    fn mul(&self, a: TruncSeries, b: TruncSeries, _: Pos) -> Result<TruncSeries, Diagnostic> {
        Ok(&a * &b)
    }
}

/// Elements of a field, with an optional named generator (a square root
/// adjoined to the base field).
pub struct FieldArith<'a, F: Field> {
    pub field: &'a F,
    pub generator: Option<(&'a str, F::Elem)>,
}

fn field_num<F: Field>(field: &F, q: &BigRational, pos: Pos) -> Result<F::Elem, Diagnostic> {
    field
        .from_rational(q)
        .map_err(|e| Diagnostic::eval(pos, e.to_string()))
}

impl<F: Field> Arith for FieldArith<'_, F> {
    type V = F::Elem;

    fn num(&self, q: &BigRational, pos: Pos) -> Result<F::Elem, Diagnostic> {
        field_num(self.field, q, pos)
    }

    fn var(&self, name: &str, pos: Pos) -> Result<F::Elem, Diagnostic> {
        match &self.generator {
            Some((g, v)) if *g == name => Ok(v.clone()),
            _ => Err(Diagnostic::type_error(
                pos,
                format!("unknown symbol `{name}`"),
            )),
        }
    }

    fn add(&self, a: F::Elem, b: F::Elem, _: Pos) -> Result<F::Elem, Diagnostic> {
        Ok(self.field.add(&a, &b))
    }

    fn neg(&self, a: F::Elem, _: Pos) -> Result<F::Elem, Diagnostic> {
        Ok(self.field.neg(&a))
    }

    fn mul(&self, a: F::Elem, b: F::Elem, _: Pos) -> Result<F::Elem, Diagnostic> {
        Ok(self.field.mul(&a, &b))
    }
}

/// Univariate polynomials over a field in the variable `var`, coefficients
/// from the constant term up.
pub struct UPolyArith<'a, F: Field> {
    pub var: &'a str,
    pub scalars: FieldArith<'a, F>,
}

impl<F: Field> Arith for UPolyArith<'_, F> {
    type V = Vec<F::Elem>;

    fn num(&self, q: &BigRational, pos: Pos) -> Result<Vec<F::Elem>, Diagnostic> {
        Ok(vec![self.scalars.num(q, pos)?])
    }

    fn var(&self, name: &str, pos: Pos) -> Result<Vec<F::Elem>, Diagnostic> {
        let k = self.scalars.field;
        if name == self.var {
            Ok(vec![k.zero(), k.one()])
        } else {
            Ok(vec![self.scalars.var(name, pos)?])
        }
    }

    fn add(&self, a: Vec<F::Elem>, b: Vec<F::Elem>, _: Pos) -> Result<Vec<F::Elem>, Diagnostic> {
        let k = self.scalars.field;
        let n = a.len().max(b.len());
        let z = k.zero();
        let mut out: Vec<F::Elem> = (0..n)
            .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        upoly::trim(k, &mut out);
        Ok(out)
    }

    fn neg(&self, a: Vec<F::Elem>, _: Pos) -> Result<Vec<F::Elem>, Diagnostic> {
        Ok(a.iter().map(|c| self.scalars.field.neg(c)).collect())
    }

    fn mul(&self, a: Vec<F::Elem>, b: Vec<F::Elem>, _: Pos) -> Result<Vec<F::Elem>, Diagnostic> {
        let k = self.scalars.field;
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = upoly::mul_trunc(k, &a, &b, a.len() + b.len() - 1);
        upoly::trim(k, &mut out);
        Ok(out)
    }
}
