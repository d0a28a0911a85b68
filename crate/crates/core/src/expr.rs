//! A small expression language over the ring engine.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := uint | generator | func '(' args ')' | '(' expr ')'
//! ```
//!
//! Generators are `eta`, `theta`, `xi(i)`, `xi'(i)` and `sigma(i)`, each
//! with an optional `@k` naming the (1-based) factor; the default is `@1`.
//! `/` divides by a scalar, so `3/2` and `theta^2/2` both parse.
//!
//! Generators are read on the `--space` of the call, except inside
//! `pull_sum(x, a)` on `sym(g,a) x sym(g,b)`, where `x` lives on `sym(g,a+b)`,
//! and inside `w_integrate(x)`, where `x` lives on `sym(5,3) x sym(5,3) x S`
//! unless the space already starts with those two factors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chern::{chern_sym, secant_class};
use crate::class::{CohClass, JsonTerm};
use crate::error::{Error, Result};
use crate::maps::{gysin_sum, pull_sum, serre_involution, w_integrate, WIntegral};
use crate::product::{delta, kunneth_component};
use crate::rational::{fmt_q, Q};
use crate::space::{FactorSpec, MultiDegree, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    Eta,
    Theta,
    Xi(u32),
    XiPrime(u32),
    Sigma(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    PullSum,
    PushSum,
    Kunneth,
    Integrate,
    Secant,
    Chern,
    Involution,
    WIntegrate,
    Delta,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::PullSum,
        Func::PushSum,
        Func::Kunneth,
        Func::Integrate,
        Func::Secant,
        Func::Chern,
        Func::Involution,
        Func::WIntegrate,
        Func::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::PullSum => "pull_sum",
            Func::PushSum => "push_sum",
            Func::Kunneth => "kunneth",
            Func::Integrate => "integrate",
            Func::Secant => "secant",
            Func::Chern => "chern",
            Func::Involution => "involution",
            Func::WIntegrate => "w_integrate",
            Func::Delta => "delta",
        }
    }

    /// Smallest and largest number of arguments.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Func::PullSum | Func::Chern | Func::Delta => (2, 2),
            Func::PushSum | Func::Integrate | Func::Involution | Func::WIntegrate => (1, 1),
            Func::Kunneth => (2, usize::MAX),
            Func::Secant => (4, 4),
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Gen { gen: Gen, factor: Option<u32> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Vec<Expr>),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, out: &mut String, ctx: u8) {
        let paren = self.prec() < ctx;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Num(n) => out.push_str(&n.to_string()),
            Expr::Gen { gen, factor } => {
                match gen {
                    Gen::Eta => out.push_str("eta"),
                    Gen::Theta => out.push_str("theta"),
                    Gen::Xi(i) => out.push_str(&format!("xi({i})")),
                    Gen::XiPrime(i) => out.push_str(&format!("xi'({i})")),
                    Gen::Sigma(i) => out.push_str(&format!("sigma({i})")),
                }
                if let Some(k) = factor {
                    out.push_str(&format!("@{k}"));
                }
            }
            Expr::Neg(a) => {
                out.push('-');
                a.write(out, 3);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, 2);
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(out, 2);
                out.push(if matches!(self, Expr::Mul(..)) { '*' } else { '/' });
                b.write(out, 3);
            }
            Expr::Pow(a, e) => {
                a.write(out, 5);
                out.push_str(&format!("^{e}"));
            }
            Expr::Call(f, args) => {
                out.push_str(f.name());
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    a.write(out, 0);
                }
                out.push(')');
            }
        }
        if paren {
            out.push(')');
        }
    }

    /// Cohomological degree when it is determined by the syntax alone.
    pub fn degree(&self) -> Option<u32> {
        match self {
            Expr::Num(_) => Some(0),
            Expr::Gen { gen, .. } => Some(match gen {
                Gen::Xi(_) | Gen::XiPrime(_) => 1,
                _ => 2,
            }),
            Expr::Neg(a) => a.degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (a.degree()?, b.degree()?);
                (x == y).then_some(x)
            }
            Expr::Mul(a, b) => Some(a.degree()? + b.degree()?),
            Expr::Div(a, b) => (b.degree()? == 0).then(|| a.degree()).flatten(),
            Expr::Pow(a, e) => Some(a.degree()? * e),
            Expr::Call(f, args) => match f {
                Func::Integrate => Some(0),
                Func::Delta => Some(2),
                Func::PullSum | Func::PushSum | Func::Involution => args[0].degree(),
                Func::Kunneth => args[1..].iter().map(int_literal).sum::<Option<u32>>(),
                Func::Secant => {
                    let (r, k) = (int_literal(&args[2])?, int_literal(&args[3])?);
                    k.checked_sub(r).map(|d| 2 * d)
                }
                Func::Chern | Func::WIntegrate => None,
            },
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

fn int_literal(e: &Expr) -> Option<u32> {
    match e {
        Expr::Num(n) => u32::try_from(n).ok(),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn perr(kind: &'static str, line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { kind, line, column: col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut out = Vec::new();
    let (mut last_line, mut last_col) = (1, 0);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (start_line, start_col) = (line, col);
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(perr(
                    "syntax error",
                    line,
                    col + (i - start),
                    "floating-point input is not accepted; write an exact rational such as 3/2",
                ));
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("digits"))
        } else if c == '.' {
            return Err(perr("syntax error", line, col, "floating-point input is not accepted"));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^(),@".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(perr("syntax error", line, col, format!("unexpected character `{c}`")));
        };
        col += i - start;
        last_line = start_line;
        last_col = col - 1;
        out.push(Token { tok, line: start_line, col: start_col });
    }
    // end of input is reported at the last character read
    out.push(Token { tok: Tok::End, line: last_line, col: last_col.max(1) });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, t: &Token, msg: impl Into<String>) -> Error {
        let msg = msg.into();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
        };
        perr("syntax error", t.line, t.col, format!("{msg}, found {found}"))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(self.fail(&t, format!("expected `{c}`")))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => u32::try_from(n).map_err(|_| perr("syntax error", t.line, t.col, "integer too large")),
            _ => Err(self.fail(&t, "expected an unsigned integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Sym('*') => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let a = self.atom()?;
        if self.peek().tok == Tok::Sym('^') {
            self.next();
            return Ok(Expr::Pow(Box::new(a), self.uint()?));
        }
        Ok(a)
    }

    fn factor_tag(&mut self) -> Result<Option<u32>> {
        if self.peek().tok != Tok::Sym('@') {
            return Ok(None);
        }
        self.next();
        let t = self.peek().clone();
        let k = self.uint()?;
        if k == 0 {
            return Err(perr("syntax error", t.line, t.col, "factor indices start at 1"));
        }
        Ok(Some(k))
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Int(n) => Ok(Expr::Num(n)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(&name, &t),
            Tok::End => {
                // point at the operator that is missing its operand
                let prev = &self.toks[self.pos.saturating_sub(1)];
                let at = if self.pos > 0 { prev } else { &t };
                Err(perr("syntax error", at.line, at.col, "expected an operand, found end of input"))
            }
            _ => Err(self.fail(&t, "expected an operand")),
        }
    }

    fn named(&mut self, name: &str, t: &Token) -> Result<Expr> {
        let gen = match name {
            "eta" => Some(Gen::Eta),
            "theta" => Some(Gen::Theta),
            "xi" | "xi'" | "sigma" => {
                self.expect('(')?;
                let i = self.uint()?;
                self.expect(')')?;
                Some(match name {
                    "xi" => Gen::Xi(i),
                    "xi'" => Gen::XiPrime(i),
                    _ => Gen::Sigma(i),
                })
            }
            _ => None,
        };
        if let Some(gen) = gen {
            return Ok(Expr::Gen { gen, factor: self.factor_tag()? });
        }
        let f = Func::lookup(name)
            .ok_or_else(|| perr("unknown identifier", t.line, t.col, format!("`{name}` is not a generator or function")))?;
        self.expect('(')?;
        let mut args = Vec::new();
        if self.peek().tok != Tok::Sym(')') {
            args.push(self.expr()?);
            while self.peek().tok == Tok::Sym(',') {
                self.next();
                args.push(self.expr()?);
            }
        }
        self.expect(')')?;
        let (lo, hi) = f.arity();
        if args.len() < lo || args.len() > hi {
            let want = if lo == hi {
                lo.to_string()
            } else if hi == usize::MAX {
                format!("at least {lo}")
            } else {
                format!("{lo} to {hi}")
            };
            return Err(perr(
                "arity mismatch",
                t.line,
                t.col,
                format!("{name} takes {want} arguments, got {}", args.len()),
            ));
        }
        Ok(Expr::Call(f, args))
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.fail(&t, "expected an operator"));
    }
    Ok(e)
}

/// Result of an evaluation: a number or a class on some space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Q),
    Class(CohClass),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(x) => write!(f, "{}", fmt_q(x)),
            Value::Class(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ValueJson {
    Scalar { value: String },
    Class { space: String, terms: Vec<JsonTerm> },
}

impl Value {
    pub fn to_json(&self) -> ValueJson {
        match self {
            Value::Scalar(x) => ValueJson::Scalar { value: fmt_q(x) },
            Value::Class(c) => ValueJson::Class { space: c.space().to_string(), terms: c.to_json_terms() },
        }
    }

    fn into_class(self, space: &SpaceSpec) -> CohClass {
        match self {
            Value::Scalar(x) => CohClass::scalar(space, x),
            Value::Class(c) => c,
        }
    }
}

fn eval_err(msg: impl Into<String>) -> Error {
    Error::Eval(msg.into())
}

fn int_arg(f: Func, e: &Expr) -> Result<u32> {
    int_literal(e).ok_or_else(|| eval_err(format!("{} expects integer literals, got `{e}`", f.name())))
}

fn same_space(f: Func, args: &[Expr], produced: &SpaceSpec, ctx: &SpaceSpec) -> Result<()> {
    if produced == ctx {
        return Ok(());
    }
    let call = Expr::Call(f, args.to_vec());
    Err(eval_err(format!(
        "{} space mismatch: `{call}` lives on {produced}, not on {ctx}; try --space \"{produced}\"",
        f.name()
    )))
}

/// Evaluates `e` with generators read on `space`.
pub fn evaluate(e: &Expr, space: &SpaceSpec) -> Result<Value> {
    let bin = |a: &Expr, b: &Expr| -> Result<(Value, Value)> { Ok((evaluate(a, space)?, evaluate(b, space)?)) };
    match e {
        Expr::Num(n) => Ok(Value::Scalar(Q::from_integer(n.clone()))),
        Expr::Gen { gen, factor } => {
            let k = factor.unwrap_or(1) as usize - 1;
            if k >= space.len() {
                return Err(eval_err(format!("`{e}` names factor {} but {space} has {} factor(s)", k + 1, space.len())));
            }
            let g = space.factor(k).genus();
            let c = match gen {
                Gen::Eta => CohClass::eta(space, k)?,
                Gen::Theta => CohClass::theta(space, k)?,
                Gen::Xi(i) => CohClass::xi(space, k, *i)?,
                Gen::XiPrime(i) => {
                    if *i == 0 || *i > g {
                        return Err(Error::IndexOutOfRange { index: *i, factor: space.factor(k).to_string() });
                    }
                    CohClass::xi(space, k, i + g)?
                }
                Gen::Sigma(i) => CohClass::sigma(space, k, *i)?,
            };
            Ok(Value::Class(c))
        }
        Expr::Neg(a) => Ok(match evaluate(a, space)? {
            Value::Scalar(x) => Value::Scalar(-x),
            Value::Class(c) => Value::Class(-c),
        }),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sub = matches!(e, Expr::Sub(..));
            match bin(a, b)? {
                (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(if sub { x - y } else { x + y })),
                (x, y) => {
                    let target = match (&x, &y) {
                        (Value::Class(c), _) | (_, Value::Class(c)) => c.space().clone(),
                        _ => unreachable!(),
                    };
                    let (x, y) = (x.into_class(&target), y.into_class(&target));
                    Ok(Value::Class(if sub { x.try_sub(&y)? } else { x.try_add(&y)? }))
                }
            }
        }
        Expr::Mul(a, b) => match bin(a, b)? {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
            (Value::Scalar(x), Value::Class(c)) | (Value::Class(c), Value::Scalar(x)) => Ok(Value::Class(c.scale(&x))),
            (Value::Class(x), Value::Class(y)) => Ok(Value::Class(x.try_mul(&y)?)),
        },
        Expr::Div(a, b) => {
            let (x, y) = bin(a, b)?;
            let d = match y {
                Value::Scalar(d) if !d.is_zero() => d,
                Value::Scalar(_) => return Err(eval_err(format!("division by zero in `{e}`"))),
                Value::Class(_) => return Err(eval_err(format!("`{b}` is a class; only division by a number is allowed"))),
            };
            Ok(match x {
                Value::Scalar(x) => Value::Scalar(x / d),
                Value::Class(c) => Value::Class(c.scale(&(Q::one() / d))),
            })
        }
        Expr::Pow(a, n) => Ok(match evaluate(a, space)? {
            Value::Scalar(x) => Value::Scalar((0..*n).fold(Q::one(), |acc, _| acc * &x)),
            Value::Class(c) => Value::Class(c.pow(*n)),
        }),
        Expr::Call(f, args) => call(*f, args, space),
    }
}

/// Space on which the arguments of `f` read their generators when the
/// result is wanted on `space`.
fn argument_space(f: Func, space: &SpaceSpec) -> SpaceSpec {
    let c3 = FactorSpec::sym(5, 3);
    match (f, space.factors()) {
        (Func::PullSum, [FactorSpec::SymCurve { genus: g, n: a }, FactorSpec::SymCurve { genus: h, n: b }]) if g == h => {
            SpaceSpec::sym(*g, a + b)
        }
        (Func::WIntegrate, fs) if !(fs.len() >= 2 && fs[0] == c3 && fs[1] == c3) => {
            let mut v = vec![c3, c3];
            v.extend(fs.iter().cloned());
            SpaceSpec::new(v).expect("nonempty")
        }
        _ => space.clone(),
    }
}

fn call(f: Func, args: &[Expr], space: &SpaceSpec) -> Result<Value> {
    let inner = argument_space(f, space);
    let class_arg = |i: usize| -> Result<CohClass> { Ok(evaluate(&args[i], &inner)?.into_class(&inner)) };
    match f {
        Func::Integrate => Ok(Value::Scalar(class_arg(0)?.integral())),
        Func::Secant => {
            let v: Vec<u32> = args.iter().map(|a| int_arg(f, a)).collect::<Result<_>>()?;
            let c = secant_class(v[0], v[1], v[2], v[3])?;
            same_space(f, args, c.space(), space)?;
            Ok(Value::Class(c))
        }
        Func::Chern => {
            let (g, n) = (int_arg(f, &args[0])?, int_arg(f, &args[1])?);
            let target = SpaceSpec::sym(g, n);
            same_space(f, args, &target, space)?;
            Ok(Value::Class(chern_sym(g, n)))
        }
        Func::Delta => {
            let (k, l) = (int_arg(f, &args[0])?, int_arg(f, &args[1])?);
            if k == 0 || l == 0 {
                return Err(eval_err("delta takes 1-based factor indices"));
            }
            Ok(Value::Class(delta(space, k as usize - 1, l as usize - 1)?))
        }
        Func::PullSum => {
            let a = int_arg(f, &args[1])?;
            Ok(Value::Class(pull_sum(&class_arg(0)?, a)?))
        }
        Func::PushSum => Ok(Value::Class(gysin_sum(&class_arg(0)?)?)),
        Func::Involution => Ok(Value::Class(serre_involution(&class_arg(0)?)?)),
        Func::Kunneth => {
            let c = class_arg(0)?;
            let md: Vec<u32> = args[1..].iter().map(|a| int_arg(f, a)).collect::<Result<_>>()?;
            if md.len() != c.space().len() {
                return Err(eval_err(format!(
                    "kunneth needs {} degrees for a class on {}, got {}",
                    c.space().len(),
                    c.space(),
                    md.len()
                )));
            }
            Ok(Value::Class(kunneth_component(&c, &MultiDegree(md))))
        }
        Func::WIntegrate => Ok(match w_integrate(&class_arg(0)?)? {
            WIntegral::Number(x) => Value::Scalar(x),
            WIntegral::Class(c) => Value::Class(c),
        }),
    }
}

/// Parses and evaluates `text` on the space written as `space`.
pub fn eval_str(space: &str, text: &str) -> Result<Value> {
    let s: SpaceSpec = space.parse()?;
    evaluate(&parse_expression(text)?, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn num(v: &str, s: &str) -> Q {
        match eval_str(s, v).unwrap() {
            Value::Scalar(x) => x,
            Value::Class(c) => panic!("expected a number, got {c}"),
        }
    }

    #[test]
    fn parses_with_degree() {
        let e = parse_expression("theta^2/2 - theta*eta + eta^2").unwrap();
        assert_eq!(e.degree(), Some(4));
        assert_eq!(e.to_string(), "theta^2/2 - theta*eta + eta^2");
        assert_eq!(parse_expression("xi(1)*xi'(1)@2").unwrap().degree(), Some(2));
    }

    #[test]
    fn syntax_error_position() {
        match parse_expression("xi(1)*") {
            Err(Error::Parse { kind, line, column, .. }) => {
                assert_eq!((kind, line, column), ("syntax error", 1, 6));
            }
            other => panic!("{other:?}"),
        }
        match parse_expression("eta +\n  (theta") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("foo(1)"), Err(Error::Parse { kind: "unknown identifier", .. })));
        assert!(matches!(parse_expression("chern(5)"), Err(Error::Parse { kind: "arity mismatch", .. })));
        assert!(matches!(parse_expression("1.5*eta"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("eta eta"), Err(Error::Parse { .. })));
    }

    #[test]
    fn integrals() {
        assert_eq!(num("integrate((theta-eta)*eta^2)", "sym(5,3)"), q(4));
        assert_eq!(num("integrate(theta^3)", "sym(5,3)"), q(60));
        assert_eq!(num("3/2 - 1/2", "sym(5,3)"), q(1));
        assert_eq!(num("w_integrate(eta@1*eta@2)", "sym(5,3) x sym(5,3)"), q(6));
        assert_eq!(num("w_integrate(eta^2)", "sym(5,3) x sym(5,3)"), q(4));
        let rest = eval_str("sym(5,4)", "w_integrate(eta@1*eta@2*eta@3)").unwrap();
        assert_eq!(rest.to_string(), "6*eta");
    }

    #[test]
    fn printed_classes() {
        assert_eq!(eval_str("sym(5,3)", "secant(6,5,2,3)").unwrap().to_string(), "theta - eta");
        assert_eq!(eval_str("sym(5,3)", "theta^3").unwrap().to_string(), "60*eta^3");
        assert_eq!(eval_str("sym(5,2) x sym(5,2)", "push_sum(theta@2)").unwrap().to_string(), "theta + 10*eta");
        let v = eval_str("sym(5,4)", "involution(eta^2)").unwrap();
        assert_eq!(v, Value::Class(eval_str("sym(5,4)", "theta^2/2 - eta*theta + eta^2").unwrap().into_class(&SpaceSpec::sym(5, 4))));
    }

    #[test]
    fn space_mismatch_suggests() {
        let err = eval_str("sym(5,4)", "chern(5,3)").unwrap_err().to_string();
        assert!(err.contains("chern space mismatch"), "{err}");
        assert!(err.contains("sym(5,3)"), "{err}");
    }

    #[test]
    fn eval_errors() {
        assert!(eval_str("sym(5,3)", "eta/theta").is_err());
        assert!(eval_str("sym(5,3)", "eta/0").is_err());
        assert!(eval_str("sym(5,3)", "eta@2").is_err());
        assert!(eval_str("sym(5,3)", "xi(11)").is_err());
        assert!(eval_str("sym(5,3)", "xi'(6)").is_err());
        assert!(eval_str("sym(5,3)", "eta + eta@1*pull_sum(eta, 1)").is_err());
    }

    #[test]
    fn delta_and_kunneth() {
        let s = "sym(5,2) x sym(5,2)";
        let v = eval_str(s, "kunneth(pull_sum(theta, 2) - theta@1 - theta@2, 1, 1)").unwrap();
        assert_eq!(v, eval_str(s, "delta(1,2)").unwrap());
        let pulled = eval_str("sym(5,4)", "pull_sum(theta, 2)").unwrap();
        assert_eq!(pulled, eval_str(s, "theta@1 + theta@2 + delta(1,2)").unwrap());
    }

    #[test]
    fn round_trip_examples() {
        for s in ["-eta^2", "(-eta)^2", "a", "1 - (2 - 3)", "2*(3*eta)", "--eta", "eta*-eta", "kunneth(eta, 2)"] {
            if let Ok(e) = parse_expression(s) {
                assert_eq!(parse_expression(&e.to_string()).unwrap(), e, "{s}");
            }
        }
        assert_ne!(parse_expression("-eta^2").unwrap(), parse_expression("(-eta)^2").unwrap());
    }
}
