//! Text syntax for polynomials and differential operators.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := INT | INT '/' INT | x<k> | d<k> | '(' sum ')'
//! ```
//!
//! `x<k>` is the k-th coordinate (aliases `x`, `y`, `z` when there are at
//! most three variables) and `d<k>` is `∂/∂x<k>`. Multiplication must be
//! written out and is not commutative in operator context: `d1*x1` is
//! `x1*d1 + 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Poly, Rational};
use crate::weyl::DiffOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("exponents must be non-negative integers")]
    NegativeExponent,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("division by zero in rational literal")]
    ZeroDenominator,
    #[error("partial derivatives are not allowed in a polynomial")]
    PartialInPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

/// Parsed expression tree, before evaluation into a ring.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    /// Zero-based coordinate index.
    Var(usize),
    /// Zero-based index of `∂`.
    Partial(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Partial(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number {r}"),
            Tok::Var(i) => format!("variable x{}", i + 1),
            Tok::Partial(i) => format!("partial d{}", i + 1),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn err(position: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { position, kind }
}

fn lex(text: &str, nvars: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let skip_ws = |mut k: usize| {
        while k < chars.len() && chars[k].1.is_whitespace() {
            k += 1;
        }
        k
    };
    let read_digits = |mut k: usize| {
        let start = k;
        while k < chars.len() && chars[k].1.is_ascii_digit() {
            k += 1;
        }
        (start, k)
    };
    let digits_str = |a: usize, b: usize| chars[a..b].iter().map(|c| c.1).collect::<String>();
    while k < chars.len() {
        let (pos, c) = chars[k];
        match c {
            _ if c.is_whitespace() => k += 1,
            '0'..='9' => {
                let (a, b) = read_digits(k);
                let num: BigInt = digits_str(a, b).parse().expect("digits");
                k = b;
                // "a/b" is a single literal
                let after = skip_ws(k);
                if after < chars.len() && chars[after].1 == '/' {
                    let den_start = skip_ws(after + 1);
                    let (a2, b2) = read_digits(den_start);
                    if a2 == b2 {
                        return Err(match chars.get(den_start) {
                            Some(&(p, ch)) => err(p, ParseErrorKind::UnexpectedChar(ch)),
                            None => err(text.len(), ParseErrorKind::UnexpectedEnd),
                        });
                    }
                    let den: BigInt = digits_str(a2, b2).parse().expect("digits");
                    if den.is_zero() {
                        return Err(err(chars[a2].0, ParseErrorKind::ZeroDenominator));
                    }
                    out.push((pos, Tok::Num(Rational::new(num, den))));
                    k = b2;
                } else {
                    out.push((pos, Tok::Num(Rational::from_integer(num))));
                }
            }
            'a'..='z' => {
                let mut e = k + 1;
                while e < chars.len() && chars[e].1.is_ascii_alphanumeric() {
                    e += 1;
                }
                let ident: String = chars[k..e].iter().map(|c| c.1).collect();
                out.push((pos, ident_token(&ident, pos, nvars)?));
                k = e;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                k += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                k += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                k += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                k += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                k += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                k += 1;
            }
            other => return Err(err(pos, ParseErrorKind::UnexpectedChar(other))),
        }
    }
    Ok(out)
}

fn ident_token(ident: &str, pos: usize, nvars: usize) -> Result<Tok, ParseError> {
    let check = |index: usize| {
        if index == 0 || index > nvars {
            Err(err(pos, ParseErrorKind::IndexOutOfRange { index, nvars }))
        } else {
            Ok(index - 1)
        }
    };
    let alias = |i: usize| {
        if nvars <= 3 {
            check(i)
        } else {
            Err(err(pos, ParseErrorKind::UnknownIdentifier(ident.to_string())))
        }
    };
    match ident {
        "x" => return alias(1).map(Tok::Var),
        "y" => return alias(2).map(Tok::Var),
        "z" => return alias(3).map(Tok::Var),
        _ => {}
    }
    let (head, digits) = ident.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(pos, ParseErrorKind::UnknownIdentifier(ident.to_string())));
    }
    let index: usize = digits
        .parse()
        .map_err(|_| err(pos, ParseErrorKind::IndexOutOfRange { index: usize::MAX, nvars }))?;
    match head {
        "x" => check(index).map(Tok::Var),
        "d" => check(index).map(Tok::Partial),
        _ => Err(err(pos, ParseErrorKind::UnknownIdentifier(ident.to_string()))),
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    allow_partials: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.at) {
            Some((p, t)) => err(*p, ParseErrorKind::UnexpectedToken(t.describe())),
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            return match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    let e = u32::try_from(n.to_integer())
                        .map_err(|_| err(pos, ParseErrorKind::ExponentTooLarge))?;
                    self.at += 1;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                Some(Tok::Minus) => Err(err(pos, ParseErrorKind::NegativeExponent)),
                Some(Tok::Num(_)) => Err(err(pos, ParseErrorKind::NegativeExponent)),
                _ => Err(self.unexpected()),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| self.unexpected())?;
        let e = match tok {
            Tok::Num(n) => Expr::Num(n),
            Tok::Var(i) => Expr::Var(i),
            Tok::Partial(i) => {
                if !self.allow_partials {
                    return Err(err(pos, ParseErrorKind::PartialInPolynomial));
                }
                Expr::Partial(i)
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                inner
            }
            _ => return Err(self.unexpected()),
        };
        self.at += 1;
        Ok(e)
    }
}

fn parse_expr(text: &str, nvars: usize, allow_partials: bool) -> Result<Expr, ParseError> {
    let toks = lex(text, nvars)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        end: text.len(),
        allow_partials,
    };
    let e = p.sum()?;
    if p.at != toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Parses an expression tree without evaluating it.
pub fn parse_expr_tree(text: &str, nvars: usize) -> Result<Expr, ParseError> {
    parse_expr(text, nvars, true)
}

pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, ParseError> {
    Ok(eval_poly(&parse_expr(text, nvars, false)?, nvars))
}

pub fn parse_diffop(text: &str, nvars: usize) -> Result<DiffOp, ParseError> {
    Ok(eval_diffop(&parse_expr(text, nvars, true)?, nvars))
}

fn eval_poly(e: &Expr, n: usize) -> Poly {
    match e {
        Expr::Num(c) => Poly::constant(n, c.clone()),
        Expr::Var(i) => Poly::var(n, *i),
        Expr::Partial(_) => unreachable!("rejected while parsing"),
        Expr::Neg(a) => -eval_poly(a, n),
        Expr::Add(a, b) => eval_poly(a, n) + eval_poly(b, n),
        Expr::Sub(a, b) => eval_poly(a, n) - eval_poly(b, n),
        Expr::Mul(a, b) => eval_poly(a, n) * eval_poly(b, n),
        Expr::Pow(a, k) => eval_poly(a, n).pow(*k),
    }
}

fn eval_diffop(e: &Expr, n: usize) -> DiffOp {
    match e {
        Expr::Num(c) => DiffOp::from_poly(Poly::constant(n, c.clone())),
        Expr::Var(i) => DiffOp::from_poly(Poly::var(n, *i)),
        Expr::Partial(i) => DiffOp::partial(n, *i),
        Expr::Neg(a) => -eval_diffop(a, n),
        Expr::Add(a, b) => eval_diffop(a, n) + eval_diffop(b, n),
        Expr::Sub(a, b) => eval_diffop(a, n) - eval_diffop(b, n),
        Expr::Mul(a, b) => eval_diffop(a, n) * eval_diffop(b, n),
        Expr::Pow(a, k) => eval_diffop(a, n).pow(*k),
    }
}

/// Variable naming used by the renderers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarStyle {
    /// `x1, x2, ...`
    #[default]
    Indexed,
    /// `x, y, z` when there are at most three variables, indexed otherwise.
    Alias,
}

fn var_name(i: usize, nvars: usize, style: VarStyle) -> String {
    match style {
        VarStyle::Alias if nvars <= 3 => ["x", "y", "z"][i].to_string(),
        _ => format!("x{}", i + 1),
    }
}

fn power_factors(exps: &[u32], name: impl Fn(usize) -> String, out: &mut Vec<String>) {
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => out.push(name(i)),
            _ => out.push(format!("{}^{}", name(i), e)),
        }
    }
}

fn push_term(buf: &mut String, c: &Rational, factors: &[String]) {
    let negative = c.is_negative();
    if buf.is_empty() {
        if negative {
            buf.push('-');
        }
    } else {
        buf.push_str(if negative { " - " } else { " + " });
    }
    let abs = c.abs();
    let mut parts = Vec::with_capacity(factors.len() + 1);
    if !abs.is_one() || factors.is_empty() {
        parts.push(abs.to_string());
    }
    parts.extend(factors.iter().cloned());
    buf.push_str(&parts.join("*"));
}

/// Canonical text: terms in descending graded lexicographic order.
pub fn render_poly(p: &Poly, style: VarStyle) -> String {
    let n = p.nvars();
    let mut buf = String::new();
    for (m, c) in p.terms().rev() {
        let mut factors = Vec::new();
        power_factors(m.exponents(), |i| var_name(i, n, style), &mut factors);
        push_term(&mut buf, c, &factors);
    }
    if buf.is_empty() {
        buf.push('0');
    }
    buf
}

/// Canonical text: one term `c*x^α*d^β` per coefficient monomial, ordered by
/// descending `β`, then descending `α`.
pub fn render_diffop(u: &DiffOp, style: VarStyle) -> String {
    let n = u.nvars();
    let mut buf = String::new();
    for (beta, f) in u.terms().rev() {
        for (alpha, c) in f.terms().rev() {
            let mut factors = Vec::new();
            power_factors(alpha.exponents(), |i| var_name(i, n, style), &mut factors);
            power_factors(beta.exponents(), |i| format!("d{}", i + 1), &mut factors);
            push_term(&mut buf, c, &factors);
        }
    }
    if buf.is_empty() {
        buf.push('0');
    }
    buf
}

/// Renders a bare monomial such as `x1^2*x3` (`1` for the unit monomial).
pub fn render_monomial(m: &Monomial, style: VarStyle) -> String {
    let n = m.nvars();
    let mut factors = Vec::new();
    power_factors(m.exponents(), |i| var_name(i, n, style), &mut factors);
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}
