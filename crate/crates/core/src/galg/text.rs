//! Plain-text serialization of graded expressions and its parser.
//!
//! Shape: a signed sum of `*`-separated factors, e.g. `(3/2)*x^2*theta*thetac`.
//! Factors are exact rationals (`3`, `(3/2)`), the imaginary unit `i`, a
//! parenthesized complex rational (`(1/2+3/4i)`), or atom tokens. An atom
//! token is the atom name, one apostrophe per time derivative, and a trailing
//! `c` when conjugated. Parsing resolves names through an [`AtomTable`], so
//! attributes (parity, time dependence) round-trip without being spelled out.

use super::atom::Atom;
use super::coeff::{self, Coeff, Rat};
use super::expr::{Factor, GradedExpr, Monomial};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Registry mapping base names to atom attributes for the parser.
#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    by_name: BTreeMap<String, Atom>,
}

impl AtomTable {
    pub fn new() -> AtomTable {
        AtomTable::default()
    }

    /// Table with the standard superspace atoms registered.
    pub fn standard() -> AtomTable {
        use super::atom::atoms;
        let mut t = AtomTable::new();
        for a in [
            atoms::theta(),
            atoms::eps(),
            atoms::x(),
            atoms::psi(),
            atoms::d_aux(),
            atoms::p(),
        ] {
            t.register(a);
        }
        t
    }

    /// Register the base (undotted, unconjugated) form of an atom.
    pub fn register(&mut self, atom: Atom) {
        assert_eq!(atom.dot_order, 0, "register base forms only");
        assert!(!atom.conjugated, "register base forms only");
        self.by_name.insert(atom.name.clone(), atom);
    }

    fn resolve(&self, token: &str, offset: usize) -> Result<Atom, ParseError> {
        if let Some(a) = self.by_name.get(token) {
            return Ok(a.clone());
        }
        let (stem, conjugated) = match token.strip_suffix('c') {
            Some(rest) if !rest.is_empty() => (rest, true),
            _ => (token, false),
        };
        let dots = stem.chars().rev().take_while(|&ch| ch == '\'').count();
        let name = &stem[..stem.len() - dots];
        let base = self.by_name.get(name).ok_or_else(|| ParseError {
            offset,
            message: format!("unknown atom `{token}`"),
        })?;
        if conjugated && base.self_conjugate {
            return Err(ParseError {
                offset,
                message: format!("atom `{name}` is self-conjugate"),
            });
        }
        let mut a = base.clone();
        if conjugated {
            a = a.conjugate_partner();
        }
        a.dot_order = dots as u32;
        Ok(a)
    }
}

fn rat_plain(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational as a standalone factor: integers bare, fractions parenthesized.
fn rat_factor(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("({})", rat_plain(r))
    }
}

fn push_coeff_factors(c: &Coeff, unit_monomial: bool, out: &mut Vec<String>) {
    let re = &c.re;
    let im = &c.im;
    if im.is_zero() {
        if !re.abs().is_one() || unit_monomial {
            out.push(rat_factor(&re.abs()));
        }
    } else if re.is_zero() {
        if !im.abs().is_one() {
            out.push(rat_factor(&im.abs()));
        }
        out.push("i".to_string());
    } else {
        // mixed complex coefficient, printed with its true signs
        let im_part = if im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{}i", rat_plain(&im.abs()))
        };
        let joiner = if im.is_negative() { "-" } else { "+" };
        out.push(format!("({}{}{})", rat_plain(re), joiner, im_part));
    }
}

/// Leading sign convention for a term: mixed complex coefficients print in
/// full inside parentheses and take a leading `+`.
fn term_is_negative(c: &Coeff) -> bool {
    if c.im.is_zero() {
        c.re.is_negative()
    } else if c.re.is_zero() {
        c.im.is_negative()
    } else {
        false
    }
}

fn monomial_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for (a, k) in m.even_powers() {
        if k == 1 {
            out.push(a.to_string());
        } else {
            out.push(format!("{a}^{k}"));
        }
    }
    for a in m.odd_atoms() {
        out.push(a.to_string());
    }
    out
}

impl fmt::Display for GradedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = term_is_negative(c);
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            push_coeff_factors(c, m.is_unit(), &mut factors);
            factors.extend(monomial_factors(m));
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    table: &'a AtomTable,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.src[self.pos..].chars().next()?;
        self.pos += ch.len_utf8();
        Some(ch)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(self.src[start..self.pos].parse().unwrap())
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let numer = self.integer()?;
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'/' {
            self.pos += 1;
            let denom = self.integer()?;
            if denom.is_zero() {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from(numer))
        }
    }

    /// Body of a parenthesized coefficient: `3/2`, `1/2+3/4i`, `1-i`, `i`.
    fn complex_body(&mut self) -> Result<Coeff, ParseError> {
        let mut re = Rat::zero();
        let mut im = Rat::zero();
        let mut leading_sign = Rat::one();
        if self.eat('-') {
            leading_sign = -leading_sign;
        }
        let first_imag;
        if self.peek() == Some('i') {
            self.bump();
            first_imag = true;
            im = leading_sign.clone();
        } else {
            let r = self.rational()?;
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'i' {
                self.pos += 1;
                first_imag = true;
                im = leading_sign * r;
            } else {
                first_imag = false;
                re = leading_sign * r;
            }
        }
        let next_sign = match self.peek() {
            Some('+') => Some(Rat::one()),
            Some('-') => Some(-Rat::one()),
            _ => None,
        };
        if let Some(sign) = next_sign {
            if first_imag {
                return self.err("imaginary part must come second");
            }
            self.bump();
            if self.peek() == Some('i') {
                self.bump();
                im = sign;
            } else {
                let r = self.rational()?;
                if self.pos < self.bytes.len() && self.bytes[self.pos] == b'i' {
                    self.pos += 1;
                } else {
                    return self.err("expected `i` after second component");
                }
                im = sign * r;
            }
        }
        Ok(Coeff::new(re, im))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        for ch in self.src[self.pos..].chars() {
            if ch.is_alphanumeric() || ch == '_' || ch == '\'' {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
        self.src[start..self.pos].to_string()
    }

    fn factor(&mut self, factors: &mut Vec<Factor>) -> Result<(), ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let c = self.complex_body()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                factors.push(Factor::Scalar(c));
                Ok(())
            }
            Some(ch) if ch.is_ascii_digit() => {
                let r = self.rational()?;
                factors.push(Factor::Scalar(coeff::from_rat(r)));
                Ok(())
            }
            Some(ch) if ch.is_alphabetic() || ch == '_' => {
                let offset = self.pos;
                let token = self.ident();
                if token == "i" {
                    factors.push(Factor::Scalar(coeff::i_unit()));
                    return Ok(());
                }
                let atom = self.table.resolve(&token, offset)?;
                if self.eat('^') {
                    let neg = self.eat('-');
                    let k: i64 = self
                        .integer()?
                        .try_into()
                        .map_err(|_| ParseError {
                            offset: self.pos,
                            message: "exponent out of range".into(),
                        })?;
                    let k = if neg { -k } else { k };
                    if atom.is_odd() && !(0..=1).contains(&k) {
                        return self.err(format!("odd atom `{atom}` cannot carry power {k}"));
                    }
                    factors.push(Factor::Pow(atom, k));
                } else {
                    factors.push(Factor::Atom(atom));
                }
                Ok(())
            }
            Some(ch) => self.err(format!("unexpected character `{ch}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<GradedExpr, ParseError> {
        let mut factors = Vec::new();
        self.factor(&mut factors)?;
        while self.eat('*') {
            self.factor(&mut factors)?;
        }
        Ok(GradedExpr::from_factors(&factors))
    }

    fn expr(&mut self) -> Result<GradedExpr, ParseError> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                Some(ch) => return self.err(format!("unexpected character `{ch}`")),
                None => return Ok(acc),
            }
        }
    }
}

/// Parse the text format back into canonical form.
pub fn parse_expr(src: &str, table: &AtomTable) -> Result<GradedExpr, ParseError> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
        table,
    };
    if src.trim() == "0" {
        return Ok(GradedExpr::zero());
    }
    p.expr()
}
