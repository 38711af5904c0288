//! Superpotential expression parser and printer.
//!
//! Grammar (standard precedence, `^` binds tightest, no division operator):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | primary ('^' exponent)?
//! primary:= RATIONAL | 'x' | 'phi' | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
//! ```
//!
//! A rational literal is one lexeme: `3/2` is the number three-halves, not a
//! division. The exponent must be an integer, written bare (`x^3`) or in
//! parentheses with an optional sign (`x^(-2)`); `x^(1/2)` is rejected.

use num::{BigInt, BigRational, One, Zero};
use std::fmt;
use susyqm::poly::RationalPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseErr {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseErr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseErr {}

fn err_at(source: &str, offset: usize, message: impl Into<String>) -> ParseErr {
    let prefix = &source[..offset.min(source.len())];
    let line = prefix.matches('\n').count() + 1;
    let column = offset - prefix.rfind('\n').map_or(0, |i| i + 1) + 1;
    ParseErr {
        message: message.into(),
        line,
        column,
    }
}

/// Abstract syntax of a superpotential formula.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(source: &str) -> Result<Vec<(Tok, usize)>, ParseErr> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '/' => {
                return Err(err_at(
                    source,
                    i,
                    "unexpected '/'; rationals are single literals like 3/2",
                ));
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numerator: BigInt = source[start..i].parse().expect("digits parse");
                let mut denominator = BigInt::one();
                if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if den_start == i {
                        return Err(err_at(source, slash, "expected digits after '/'"));
                    }
                    denominator = source[den_start..i].parse().expect("digits parse");
                    if denominator.is_zero() {
                        return Err(err_at(source, den_start, "zero denominator"));
                    }
                }
                out.push((Tok::Num(BigRational::new(numerator, denominator)), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(source[start..i].to_string()), start));
            }
            _ => {
                return Err(err_at(source, i, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    source: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.source.len(), |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseErr> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err_at(self.source, self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseErr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseErr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseErr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let k = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseErr> {
        let at = self.offset();
        let parenthesized = self.peek() == Some(&Tok::LParen);
        if parenthesized {
            self.pos += 1;
        }
        let negative = if parenthesized && self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let value = match self.bump() {
            Some(Tok::Num(r)) => {
                if !r.denom().is_one() {
                    return Err(err_at(self.source, at, "non-integer exponent"));
                }
                let n = r.numer();
                i64::try_from(n.clone())
                    .map_err(|_| err_at(self.source, at, "exponent out of range"))?
            }
            _ => return Err(err_at(self.source, at, "expected integer exponent")),
        };
        if parenthesized {
            self.expect(Tok::RParen, "')' after exponent")?;
        }
        Ok(if negative { -value } else { value })
    }

    fn primary(&mut self) -> Result<Expr, ParseErr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(r)) => Ok(Expr::Rational(r)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" | "phi" => Ok(Expr::Var),
                "sin" | "cos" => {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')' closing the argument")?;
                    Ok(if name == "sin" {
                        Expr::Sin(Box::new(arg))
                    } else {
                        Expr::Cos(Box::new(arg))
                    })
                }
                other => Err(err_at(
                    self.source,
                    at,
                    format!("unknown identifier '{other}'"),
                )),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing ')'")?;
                Ok(inner)
            }
            _ => Err(err_at(self.source, at, "expected a value")),
        }
    }
}

pub fn parse_superpotential(source: &str) -> Result<Expr, ParseErr> {
    let toks = lex(source)?;
    let mut p = Parser {
        source,
        toks,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err_at(source, p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

// Precedence levels used by both the printer and the grammar:
// sum 1, product 2, unary minus 3, power 4, atom 5.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Rational(_) | Expr::Var | Expr::Sin(_) | Expr::Cos(_) => 5,
    }
}

fn print_prec(e: &Expr, min: u8, out: &mut String) {
    let mine = precedence(e);
    if mine < min {
        out.push('(');
        print_inner(e, out);
        out.push(')');
    } else {
        print_inner(e, out);
    }
}

fn print_inner(e: &Expr, out: &mut String) {
    match e {
        Expr::Rational(r) => out.push_str(&r.to_string()),
        Expr::Var => out.push('x'),
        Expr::Neg(u) => {
            out.push('-');
            print_prec(u, 3, out);
        }
        Expr::Add(a, b) => {
            print_prec(a, 1, out);
            out.push_str(" + ");
            print_prec(b, 2, out);
        }
        Expr::Sub(a, b) => {
            print_prec(a, 1, out);
            out.push_str(" - ");
            print_prec(b, 2, out);
        }
        Expr::Mul(a, b) => {
            print_prec(a, 2, out);
            out.push('*');
            print_prec(b, 3, out);
        }
        Expr::Pow(b, k) => {
            print_prec(b, 5, out);
            if *k < 0 {
                out.push_str(&format!("^({k})"));
            } else {
                out.push_str(&format!("^{k}"));
            }
        }
        Expr::Sin(u) => {
            out.push_str("sin(");
            print_inner(u, out);
            out.push(')');
        }
        Expr::Cos(u) => {
            out.push_str("cos(");
            print_inner(u, out);
            out.push(')');
        }
    }
}

pub fn pretty(e: &Expr) -> String {
    let mut out = String::new();
    print_inner(e, &mut out);
    out
}

/// Exact conversion to polynomial coefficients; trigonometric or
/// negative-power subtrees are rejected.
pub fn to_polynomial(e: &Expr) -> Result<RationalPoly, String> {
    match e {
        Expr::Rational(r) => Ok(RationalPoly::new(vec![r.clone()])),
        Expr::Var => Ok(RationalPoly::new(vec![
            BigRational::zero(),
            BigRational::one(),
        ])),
        Expr::Neg(u) => Ok(to_polynomial(u)?.scale(&-BigRational::one())),
        Expr::Add(a, b) => Ok(to_polynomial(a)?.add(&to_polynomial(b)?)),
        Expr::Sub(a, b) => {
            Ok(to_polynomial(a)?.add(&to_polynomial(b)?.scale(&-BigRational::one())))
        }
        Expr::Mul(a, b) => Ok(to_polynomial(a)?.mul(&to_polynomial(b)?)),
        Expr::Pow(b, k) => {
            if *k < 0 {
                return Err("negative powers are not polynomial".into());
            }
            if *k > 64 {
                return Err("exponent too large for a polynomial".into());
            }
            let base = to_polynomial(b)?;
            let mut acc = RationalPoly::new(vec![BigRational::one()]);
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            Ok(acc)
        }
        Expr::Sin(_) => Err("sin(...) is not polynomial".into()),
        Expr::Cos(_) => Err("cos(...) is not polynomial".into()),
    }
}
