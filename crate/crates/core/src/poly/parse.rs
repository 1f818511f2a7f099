//! Text grammar for forms in `x, y, z`:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power ('*'? power)*          juxtaposition multiplies
//! power   := atom ('^' integer)?
//! atom    := number | 'x' | 'y' | 'z' | '(' expr ')'
//! number  := digits ('/' digits)?          rational literal, no decimals
//! ```
//!
//! The Unicode minus sign `−` is accepted as `-`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{HomPoly, Var};
use crate::geometry::LinearForm;
use crate::linalg::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("inhomogeneous expression: terms of degree {first} and {second}")]
    Inhomogeneous { first: u32, second: u32 },
    #[error("factor {index} is not a linear form")]
    NotLinear { index: usize },
    #[error("linear factor {0} appears more than once")]
    RepeatedFactor(String),
    #[error("expression is not a product of linear forms")]
    NotAProduct,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(Var),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().map(|c| c.1).collect::<String>()
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let num: BigInt = digits(&mut i).parse().expect("digits");
                let mut j = i;
                while j < chars.len() && chars[j].1 == ' ' {
                    j += 1;
                }
                let mut value = Rational::from_integer(num);
                if j < chars.len() && chars[j].1 == '/' {
                    let mut k = j + 1;
                    while k < chars.len() && chars[k].1 == ' ' {
                        k += 1;
                    }
                    let mut m = k;
                    let den = digits(&mut m);
                    if den.is_empty() {
                        return Err(syntax(chars[j].0, "expected denominator after '/'"));
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(syntax(chars[k].0, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                    i = m;
                }
                if i < chars.len() && chars[i].1 == '.' {
                    return Err(syntax(chars[i].0, "decimal literals are not allowed"));
                }
                out.push((pos, Tok::Num(value)));
            }
            'x' | 'y' | 'z' => {
                let v = match c {
                    'x' => Var::X,
                    'y' => Var::Y,
                    _ => Var::Z,
                };
                out.push((pos, Tok::Var(v)));
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' | '·' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Rational),
    Var(Var),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push((negative, self.term()?));
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => break,
            }
            self.at += 1;
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.power()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    factors.push(self.power()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    factors.push(self.power()?);
                }
                _ => break,
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Expr::Product(factors))
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.at += 1;
                    let e = u32::try_from(n.to_integer())
                        .map_err(|_| syntax(pos, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(syntax(pos, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Var(v)) => {
                self.at += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                self.at += 1;
                Ok(e)
            }
            Some(t) => Err(syntax(pos, format!("unexpected token {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Sparse, possibly inhomogeneous polynomial. `degrees` records every degree
/// that occurred syntactically, even when the terms cancel, so that `x - x`
/// is the zero form of degree 1.
#[derive(Clone, Debug)]
struct Sparse {
    terms: BTreeMap<(u32, u32, u32), Rational>,
    degrees: BTreeSet<u32>,
}

impl Sparse {
    fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0, 0), c);
        }
        Sparse {
            terms,
            degrees: [0].into(),
        }
    }

    fn add(mut self, other: Sparse, negate: bool) -> Sparse {
        for (k, v) in other.terms {
            let v = if negate { -v } else { v };
            let e = self.terms.entry(k).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                self.terms.remove(&k);
            }
        }
        self.degrees.extend(other.degrees);
        self
    }

    fn mul(&self, other: &Sparse) -> Sparse {
        let mut terms: BTreeMap<(u32, u32, u32), Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let k = (a.0 + b.0, a.1 + b.1, a.2 + b.2);
                *terms.entry(k).or_insert_with(Rational::zero) += x * y;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        let degrees = self
            .degrees
            .iter()
            .flat_map(|a| other.degrees.iter().map(move |b| a + b))
            .collect();
        Sparse { terms, degrees }
    }
}

fn eval(e: &Expr) -> Sparse {
    match e {
        Expr::Num(n) => Sparse::constant(n.clone()),
        Expr::Var(v) => {
            let k = match v {
                Var::X => (1, 0, 0),
                Var::Y => (0, 1, 0),
                Var::Z => (0, 0, 1),
            };
            Sparse {
                terms: [(k, Rational::one())].into(),
                degrees: [1].into(),
            }
        }
        Expr::Sum(ts) => ts.iter().fold(
            Sparse {
                terms: BTreeMap::new(),
                degrees: BTreeSet::new(),
            },
            |acc, (neg, t)| acc.add(eval(t), *neg),
        ),
        Expr::Product(fs) => fs.iter().fold(Sparse::constant(Rational::one()), |acc, f| {
            acc.mul(&eval(f))
        }),
        Expr::Pow(b, n) => {
            let base = eval(b);
            (0..*n).fold(Sparse::constant(Rational::one()), |acc, _| acc.mul(&base))
        }
    }
}

fn to_hompoly(s: Sparse) -> Result<HomPoly, ParseError> {
    let mut degs = s.degrees.iter();
    let d = *degs.next().unwrap_or(&0);
    if let Some(&other) = degs.next() {
        return Err(ParseError::Inhomogeneous {
            first: d,
            second: other,
        });
    }
    let mut p = HomPoly::zero(d);
    for ((a, b, c), v) in s.terms {
        p += &HomPoly::monomial(v, a, b, c);
    }
    Ok(p)
}

/// Parses and expands a homogeneous expression.
pub fn parse(src: &str) -> Result<HomPoly, ParseError> {
    to_hompoly(eval(&parse_expr(src)?))
}

/// Parses an expression written as a product of linear factors, e.g.
/// `xyz(x+y-z)(2x-y-2z)`, and returns the distinct normalized factors in
/// order. Numeric factors are dropped; repeated factors are rejected.
pub fn parse_linear_factors(src: &str) -> Result<Vec<LinearForm>, ParseError> {
    let e = parse_expr(src)?;
    fn flatten(e: Expr, out: &mut Vec<Expr>) {
        match e {
            Expr::Product(fs) => fs.into_iter().for_each(|f| flatten(f, out)),
            other => out.push(other),
        }
    }
    let mut factors = Vec::new();
    flatten(e, &mut factors);
    let mut out: Vec<LinearForm> = Vec::new();
    let push = |f: &Expr, index: usize, out: &mut Vec<LinearForm>| -> Result<(), ParseError> {
        let p = to_hompoly(eval(f))?;
        if p.degree() == 0 {
            return Ok(());
        }
        if p.degree() != 1 {
            return Err(ParseError::NotLinear { index });
        }
        let c = p.coeffs();
        let l = LinearForm::new(c[0].clone(), c[1].clone(), c[2].clone())
            .ok_or(ParseError::NotLinear { index })?;
        if out.contains(&l) {
            return Err(ParseError::RepeatedFactor(l.to_string()));
        }
        out.push(l);
        Ok(())
    };
    for (index, f) in factors.iter().enumerate() {
        match f {
            Expr::Pow(b, 1) => push(b, index, &mut out)?,
            Expr::Pow(b, n) if *n > 1 => {
                let p = to_hompoly(eval(b))?;
                if p.degree() == 0 {
                    continue;
                }
                return Err(ParseError::RepeatedFactor(p.to_string()));
            }
            Expr::Sum(_) | Expr::Var(_) | Expr::Num(_) | Expr::Pow(..) => push(f, index, &mut out)?,
            Expr::Product(_) => unreachable!("flattened"),
        }
    }
    if out.is_empty() {
        return Err(ParseError::NotAProduct);
    }
    Ok(out)
}
