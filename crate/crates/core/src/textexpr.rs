//! Shared text grammar for scalars, polynomials and matrix literals.
//!
//! One tokenizer/parser serves every text surface of the crate: F_q(T)
//! coefficients, multivariate polynomial systems, power-series terms and the
//! matrix literals of the twisted-polynomial grammar. Targets plug in via
//! [`ExprAlg`].

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Matrix(Vec<Vec<Expr>>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(dv) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dv as i64))
                            .ok_or_else(|| Error::parse(line, "integer literal too large"))?;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            '[' => {
                it.next();
                out.push(Tok::LBracket);
            }
            ']' => {
                it.next();
                out.push(Tok::RBracket);
            }
            ',' => {
                it.next();
                out.push(Tok::Comma);
            }
            other => {
                return Err(Error::parse(line, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::parse(self.line, format!("expected {t:?}, got {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.next();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Int(e)) if e >= 0 => {
                    base = Expr::Pow(
                        Box::new(base),
                        u32::try_from(e)
                            .map_err(|_| Error::parse(self.line, "exponent too large"))?,
                    );
                }
                other => {
                    return Err(Error::parse(
                        self.line,
                        format!("expected a nonnegative integer exponent, got {other:?}"),
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(Expr::Int(v)),
            Some(Tok::Ident(name)) => Ok(Expr::Var(name)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::LBracket) => {
                // matrix literal [[a,b],[c,d]]
                let mut rows = Vec::new();
                loop {
                    self.expect(Tok::LBracket)?;
                    let mut row = Vec::new();
                    loop {
                        row.push(self.expr()?);
                        match self.next() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RBracket) => break,
                            got => {
                                return Err(Error::parse(
                                    self.line,
                                    format!("expected ',' or ']' in matrix row, got {got:?}"),
                                ))
                            }
                        }
                    }
                    rows.push(row);
                    match self.next() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RBracket) => break,
                        got => {
                            return Err(Error::parse(
                                self.line,
                                format!("expected ',' or ']' after matrix row, got {got:?}"),
                            ))
                        }
                    }
                }
                Ok(Expr::Matrix(rows))
            }
            got => Err(Error::parse(self.line, format!("unexpected token {got:?}"))),
        }
    }
}

/// Parse a full expression; `line` is used in diagnostics.
pub fn parse_expr(s: &str, line: usize) -> Result<Expr> {
    let toks = tokenize(s, line)?;
    if toks.is_empty() {
        return Err(Error::parse(line, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, line };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(line, format!("trailing input after expression: {:?}", p.peek())));
    }
    Ok(e)
}

/// Target algebra for expression evaluation.
pub trait ExprAlg {
    type Value: Clone;

    fn from_int(&self, k: i64) -> Result<Self::Value>;
    fn var(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value>;

    fn pow(&self, a: &Self::Value, e: u32) -> Result<Self::Value> {
        let mut acc = self.from_int(1)?;
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }
}

pub fn eval_expr<A: ExprAlg>(e: &Expr, alg: &A) -> Result<A::Value> {
    match e {
        Expr::Int(v) => alg.from_int(*v),
        Expr::Var(name) => alg.var(name),
        Expr::Add(a, b) => alg.add(&eval_expr(a, alg)?, &eval_expr(b, alg)?),
        Expr::Sub(a, b) => alg.sub(&eval_expr(a, alg)?, &eval_expr(b, alg)?),
        Expr::Mul(a, b) => alg.mul(&eval_expr(a, alg)?, &eval_expr(b, alg)?),
        Expr::Div(a, b) => alg.div(&eval_expr(a, alg)?, &eval_expr(b, alg)?),
        Expr::Neg(a) => alg.neg(&eval_expr(a, alg)?),
        Expr::Pow(a, e) => alg.pow(&eval_expr(a, alg)?, *e),
        Expr::Matrix(_) => Err(Error::Invalid(
            "matrix literal not allowed in a scalar expression".into(),
        )),
    }
}

/// Evaluate into a plain ring with a variable resolver.
pub struct ScalarAlg<'a, R: Ring, F: Fn(&str) -> Option<R::Elem>> {
    pub ring: &'a R,
    pub resolve: F,
}

impl<'a, R: Ring, F: Fn(&str) -> Option<R::Elem>> ExprAlg for ScalarAlg<'a, R, F> {
    type Value = R::Elem;

    fn from_int(&self, k: i64) -> Result<R::Elem> {
        Ok(self.ring.from_int(k))
    }
    fn var(&self, name: &str) -> Result<R::Elem> {
        (self.resolve)(name).ok_or_else(|| Error::Invalid(format!("unknown symbol '{name}'")))
    }
    fn add(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.ring.mul(a, b)
    }
    fn div(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
        self.ring.div(a, b)
    }
    fn neg(&self, a: &R::Elem) -> Result<R::Elem> {
        Ok(self.ring.neg(a))
    }
}

/// Parse an element of F_q(T); `T` is the variable, `g` the canonical
/// generator of a non-prime F_q.
pub fn parse_ratfn(
    s: &str,
    field: &'static crate::localfield::FqTable,
    line: usize,
) -> Result<crate::localfield::RationalFn> {
    use crate::localfield::{FqPoly, RationalFn};
    let ring = crate::ring::RatFnField(field);
    let e = parse_expr(s, line)?;
    let alg = ScalarAlg {
        ring: &ring,
        resolve: |name: &str| match name {
            "T" => Some(RationalFn::t(field)),
            "g" if field.n > 1 => Some(RationalFn::from_poly(FqPoly::constant(
                field,
                field.generator(),
            ))),
            _ => None,
        },
    };
    eval_expr(&e, &alg)
}

/// Parse a rational number (integers, fractions, arithmetic).
pub fn parse_ratnum(s: &str, line: usize) -> Result<crate::localfield::RationalNum> {
    let ring = crate::ring::RatField;
    let e = parse_expr(s, line)?;
    let alg = ScalarAlg { ring: &ring, resolve: |_: &str| None };
    eval_expr(&e, &alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::FqTable;

    #[test]
    fn parse_rational_functions() {
        let f2 = FqTable::get(2).unwrap();
        let x = parse_ratfn("(T^2+1)/(T^3+T)", f2, 1).unwrap();
        // (T+1)^2 / T(T+1)^2 = 1/T
        assert_eq!(x.to_string(), "1/T");
        let y = parse_ratfn("T + 1 + T", f2, 1).unwrap();
        assert_eq!(y.to_string(), "1");
    }

    #[test]
    fn parse_with_generator() {
        let f4 = FqTable::get(4).unwrap();
        let x = parse_ratfn("g^2*T", f4, 1).unwrap();
        assert!(!x.is_zero());
        let g = f4.generator();
        assert_eq!(x.num().leading().unwrap(), g.mul(g));
    }

    #[test]
    fn parse_rationals() {
        let x = parse_ratnum("3/4 - 1", 1).unwrap();
        assert_eq!(x.to_string(), "-1/4");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_expr("T +* 2", 7).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 7),
            other => panic!("unexpected {other:?}"),
        }
    }
}
