//! Expression language: lexer, recursive-descent parser and renderer.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '·') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT ('/' INT)? | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagKind {
    Syntax,
    Type,
    Eval,
}

/// An error located in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagKind,
    pub pos: Pos,
    pub message: String,
}

impl Diagnostic {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind: DiagKind::Syntax,
            pos,
            message: message.into(),
        }
    }

    pub fn type_error(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind: DiagKind::Type,
            pos,
            message: message.into(),
        }
    }

    pub fn eval(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind: DiagKind::Eval,
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagKind::Syntax => "syntax error",
            DiagKind::Type => "type error",
            DiagKind::Eval => "evaluation error",
        };
        write!(f, "{kind} at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Canonical ASCII spelling of an identifier; Greek letters are aliases.
pub fn canonical_name(name: &str) -> String {
    match name {
        "λ" => "lambda".into(),
        "κ" => "kappa".into(),
        "δ0" => "delta0".into(),
        "δ1" => "delta1".into(),
        _ => name.into(),
    }
}

/// Display spelling of a canonical name.
pub fn display_name(name: &str) -> &str {
    match name {
        "lambda" => "λ",
        "kappa" => "κ",
        "delta0" => "δ0",
        "delta1" => "δ1",
        _ => name,
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                advance(d, &mut pos);
            }
            out.push((Tok::Int(s.parse().expect("digits")), start));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                advance(d, &mut pos);
            }
            out.push((Tok::Ident(canonical_name(&s)), start));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                return Err(Diagnostic::syntax(
                    start,
                    format!("unexpected character `{c}`"),
                ))
            }
        };
        chars.next();
        advance(c, &mut pos);
        out.push((tok, start));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    /// `c(B)`: total Chern class.
    Total,
    /// `cI(B)`: the `I`-th Chern class.
    Chern(u32),
    Dual,
    Inv,
    Part,
    Porteous,
    Push,
    Subst,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "c" => Func::Total,
            "dual" => Func::Dual,
            "inv" => Func::Inv,
            "part" => Func::Part,
            "porteous" => Func::Porteous,
            "push" => Func::Push,
            "subst" => Func::Subst,
            _ => {
                let digits = name.strip_prefix('c')?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                Func::Chern(digits.parse().ok()?)
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Func::Total => "c".into(),
            Func::Chern(i) => format!("c{i}"),
            Func::Dual => "dual".into(),
            Func::Inv => "inv".into(),
            Func::Part => "part".into(),
            Func::Porteous => "porteous".into(),
            Func::Push => "push".into(),
            Func::Subst => "subst".into(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Func::Part => 2,
            Func::Porteous => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Num(BigRational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

/// A node with the position of its first token. Equality ignores positions.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Num(a), Num(b)) => a == b,
            (Var(a), Var(b)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) => {
                a == c && b == d
            }
            (Pow(a, m), Pow(b, n)) => a == b && m == n,
            (Call(f, a), Call(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for Expr {}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, Diagnostic> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(Diagnostic::syntax(
                self.pos(),
                format!("expected {want}, found {}", self.peek()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.term()?;
        loop {
            let make = match self.peek() {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let pos = lhs.pos;
            lhs = Expr {
                kind: make(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            let pos = lhs.pos;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                pos,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => {
                let e =
                    u32::try_from(&n).map_err(|_| Diagnostic::syntax(pos, "exponent too large"))?;
                let p = base.pos;
                Ok(Expr {
                    kind: ExprKind::Pow(Box::new(base), e),
                    pos: p,
                })
            }
            t => Err(Diagnostic::syntax(
                pos,
                format!("exponent must be a nonnegative integer, found {t}"),
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => {
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump().0 {
                        Tok::Int(d) if d.is_positive() => q /= BigRational::from_integer(d),
                        Tok::Int(_) => return Err(Diagnostic::syntax(dpos, "division by zero")),
                        t => {
                            return Err(Diagnostic::syntax(
                                dpos,
                                format!("`/` only divides integer literals, found {t}"),
                            ))
                        }
                    }
                }
                Ok(Expr {
                    kind: ExprKind::Num(q),
                    pos,
                })
            }
            Tok::Ident(name) => {
                if *self.peek() != Tok::LParen {
                    return Ok(Expr {
                        kind: ExprKind::Var(name),
                        pos,
                    });
                }
                let func = Func::from_name(&name)
                    .ok_or_else(|| Diagnostic::syntax(pos, format!("unknown function `{name}`")))?;
                self.bump();
                let mut args = Vec::new();
                loop {
                    if matches!(self.peek(), Tok::RParen | Tok::Comma | Tok::End) {
                        return Err(Diagnostic::syntax(
                            self.pos(),
                            format!("expected an argument, found {}", self.peek()),
                        ));
                    }
                    args.push(self.expr()?);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RParen)?;
                if args.len() != func.arity() {
                    return Err(Diagnostic::syntax(
                        pos,
                        format!(
                            "`{}` takes {} argument(s), got {}",
                            func.name(),
                            func.arity(),
                            args.len()
                        ),
                    ));
                }
                Ok(Expr {
                    kind: ExprKind::Call(func, args),
                    pos,
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            t => Err(Diagnostic::syntax(
                pos,
                format!("expected an expression, found {t}"),
            )),
        }
    }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr, Diagnostic> {
    parse_at(src, Pos { line: 1, col: 1 })
}

/// Parses text that starts at `origin` in a larger file, so diagnostics
/// point into that file.
pub fn parse_at(src: &str, origin: Pos) -> Result<Expr, Diagnostic> {
    let shift = |mut e: Diagnostic| {
        e.pos = shift_pos(e.pos, origin);
        e
    };
    let toks = lex(src)
        .map_err(shift)?
        .into_iter()
        .map(|(t, p)| (t, shift_pos(p, origin)))
        .collect();
    let mut p = Parser { toks, i: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Diagnostic::syntax(
            p.pos(),
            format!("unexpected {} after expression", p.peek()),
        ));
    }
    Ok(e)
}

fn shift_pos(p: Pos, origin: Pos) -> Pos {
    if p.line == 1 {
        Pos {
            line: origin.line,
            col: origin.col + p.col - 1,
        }
    } else {
        Pos {
            line: origin.line + p.line - 1,
            col: p.col,
        }
    }
}

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) => 2,
        ExprKind::Neg(..) => 3,
        ExprKind::Pow(..) => 4,
        ExprKind::Num(q) if !q.is_integer() => 2,
        _ => 5,
    }
}

fn render_at(e: &Expr, min: u8, out: &mut String) {
    let wrap = precedence(e) < min;
    if wrap {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Num(q) => out.push_str(&q.to_string()),
        ExprKind::Var(v) => out.push_str(v),
        ExprKind::Neg(a) => {
            out.push('-');
            render_at(a, 3, out);
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            render_at(a, 1, out);
            out.push_str(if matches!(e.kind, ExprKind::Add(..)) {
                " + "
            } else {
                " - "
            });
            render_at(b, 2, out);
        }
        ExprKind::Mul(a, b) => {
            render_at(a, 2, out);
            out.push_str(" * ");
            render_at(b, 3, out);
        }
        ExprKind::Pow(a, n) => {
            render_at(a, 5, out);
            out.push_str(&format!("^{n}"));
        }
        ExprKind::Call(f, args) => {
            out.push_str(&f.name());
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_at(a, 0, out);
            }
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Source text that parses back to an equal expression.
pub fn render(e: &Expr) -> String {
    let mut s = String::new();
    render_at(e, 0, &mut s);
    s
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// A nonnegative integer literal, as used for degrees and ranks.
pub fn as_small_int(e: &Expr) -> Option<u32> {
    match &e.kind {
        ExprKind::Num(q) if q.is_integer() && !q.is_negative() => u32::try_from(q.numer()).ok(),
        _ => None,
    }
}

/// `1` as a literal, for callers building expressions.
pub fn one_literal(pos: Pos) -> Expr {
    Expr {
        kind: ExprKind::Num(BigRational::one()),
        pos,
    }
}
