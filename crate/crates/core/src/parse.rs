//! Parser for algebra expressions such as
//! `3*(q - q^-1)^-1 * E1*E2*K1^-2*F1` and for scalar expressions in q.
//!
//! Grammar (whitespace-insensitive):
//!   expr    := ['-'] term (('+'|'-') term)*
//!   term    := factor (('*'|'/') factor)*
//!   factor  := primary ['^' signed-int]
//!   primary := number | 'q' | E<i> | F<i> | K<i> | '(' expr ')'
//! Numbers may be integers, fractions written with '/', or decimals.
//! Negative powers require an invertible base: a nonzero scalar or a
//! monomial in the K generators.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Element, Letter};
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::qfield::QRat;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Q,
    Gen(char, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Token::RParen));
                i += 1;
            }
            'q' => {
                toks.push((i, Token::Q));
                i += 1;
            }
            'E' | 'F' | 'K' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("generator {} needs an index", c),
                    });
                }
                let idx: usize = input[ds..i].parse().map_err(|_| Error::Parse {
                    pos: ds,
                    msg: "index out of range".into(),
                })?;
                if idx == 0 {
                    return Err(Error::Parse { pos: ds, msg: "indices start at 1".into() });
                }
                toks.push((start, Token::Gen(c, idx - 1)));
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut value: BigRational =
                    BigRational::from_integer(input[start..i].parse::<BigInt>().unwrap());
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if fs == i {
                        return Err(Error::Parse {
                            pos: i,
                            msg: "expected digits after decimal point".into(),
                        });
                    }
                    let frac: BigInt = input[fs..i].parse().unwrap();
                    let scale = BigInt::from(10).pow((i - fs) as u32);
                    value += BigRational::new(frac, scale);
                }
                toks.push((start, Token::Number(value)));
            }
            _ => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character '{}'", c) })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Token)],
    pos: usize,
    cartan: CartanData,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Element> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(Token::Slash) => {
                    let at = self.here();
                    self.bump();
                    let f = self.factor()?;
                    let inv = invert(&f).map_err(|_| Error::Parse {
                        pos: at,
                        msg: "division requires an invertible divisor".into(),
                    })?;
                    acc = acc.mul(&inv)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let at = self.here();
            let e = self.signed_int()?;
            return power(&base, e).map_err(|err| match err {
                Error::Parse { .. } => err,
                _ => Error::Parse {
                    pos: at,
                    msg: "negative power of a non-invertible expression".into(),
                },
            });
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let at = self.here();
        let mut neg = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            neg = true;
        }
        match self.bump() {
            Some(Token::Number(n)) if n.is_integer() => {
                let v: i64 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::Parse { pos: at, msg: "expected integer exponent".into() }),
        }
    }

    fn primary(&mut self) -> Result<Element> {
        let at = self.here();
        match self.bump().cloned() {
            Some(Token::Number(n)) => Ok(Element::scalar(self.cartan, QRat::from_rational(n))),
            Some(Token::Q) => Ok(Element::scalar(self.cartan, QRat::q())),
            Some(Token::Gen(c, idx)) => {
                self.cartan.check_index(idx)?;
                let letter = match c {
                    'E' => Letter::E(idx),
                    'F' => Letter::F(idx),
                    _ => Letter::K(idx, 1),
                };
                Element::generator(self.cartan, letter)
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse { pos: self.here(), msg: "expected ')'".into() }),
                }
            }
            _ => Err(Error::Parse { pos: at, msg: "expected a number, q, generator, or '('".into() }),
        }
    }
}

/// Inverse of an element, defined for nonzero scalars and for scalar
/// multiples of K-monomials.
fn invert(x: &Element) -> Result<Element> {
    if let Some(c) = x.as_scalar() {
        return Ok(Element::scalar(*x.cartan(), c.inverse()?));
    }
    let mut terms = x.terms();
    if let (Some((m, c)), None) = (terms.next(), terms.next()) {
        if m.eword.is_empty() && m.fword.is_empty() {
            let word: Vec<Letter> = m
                .kexp
                .iter()
                .enumerate()
                .filter(|(_, &l)| l != 0)
                .map(|(i, &l)| Letter::K(i, -l))
                .collect();
            return Element::from_word(*x.cartan(), &word, c.inverse()?);
        }
    }
    Err(Error::Domain("element is not invertible".into()))
}

fn power(x: &Element, e: i64) -> Result<Element> {
    if e >= 0 {
        x.pow(e as u32)
    } else {
        invert(x)?.pow((-e) as u32)
    }
}

/// Parse an algebra expression over U_q(sl(rank+1)).
pub fn parse_element(cartan: CartanData, input: &str) -> Result<Element> {
    let toks = tokenize(input)?;
    let mut p = Parser { toks: &toks, pos: 0, cartan, end: input.len() };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse { pos: p.here(), msg: "trailing input".into() });
    }
    Ok(e)
}

/// Parse a scalar expression in q (no generators).
pub fn parse_qrat(input: &str) -> Result<QRat> {
    let cartan = CartanData::type_a(1)?;
    let e = parse_element(cartan, input)?;
    e.as_scalar().ok_or(Error::Parse { pos: 0, msg: "expected a scalar expression".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> CartanData {
        CartanData::type_a(2).unwrap()
    }

    #[test]
    fn parses_spec_grammar() {
        let x = parse_element(c2(), "3*(q-q^-1)^-1 * E1*E2*K1^-2*F1").unwrap();
        assert_eq!(x.num_terms(), 1);
        let three_inv = parse_qrat("3").unwrap();
        let d = parse_qrat("(q - q^-1)^-1").unwrap();
        let manual = Element::from_word(
            c2(),
            &[Letter::E(0), Letter::E(1), Letter::K(0, -2), Letter::F(0)],
            &(&three_inv * &d) * &QRat::one(),
        )
        .unwrap();
        assert_eq!(x, manual);
    }

    #[test]
    fn scalar_expressions() {
        assert_eq!(parse_qrat("q + q^-1").unwrap(), &QRat::q() + &QRat::q_pow(-1));
        assert_eq!(parse_qrat("1/2").unwrap(), QRat::from_fraction(1, 2));
        assert_eq!(parse_qrat("0.25").unwrap(), QRat::from_fraction(1, 4));
        assert_eq!(parse_qrat("-q^2").unwrap(), -&QRat::q_pow(2));
        assert_eq!(
            parse_qrat("(q^2 - 1)/(q - 1)").unwrap(),
            &QRat::q() + &QRat::one()
        );
        assert!(parse_qrat("E1").is_err());
    }

    #[test]
    fn sums_and_precedence() {
        let x = parse_element(c2(), "E1*F1 - F1*E1").unwrap();
        let k = parse_element(c2(), "(K1 - K1^-1) * (q - q^-1)^-1").unwrap();
        assert_eq!(x, k);
    }

    #[test]
    fn display_roundtrip() {
        let inputs = [
            "E1*F1 - (q - q^-1)^-1*K1 + (q - q^-1)^-1*K1^-1",
            "E1^2*E2*K1^-2*F2",
            "3 + q^2 - 2*K2",
        ];
        for s in inputs {
            let x = parse_element(c2(), s).unwrap();
            let y = parse_element(c2(), &x.to_string()).unwrap();
            assert_eq!(x, y, "roundtrip failed for {}", s);
        }
    }

    #[test]
    fn error_positions() {
        assert!(matches!(
            parse_element(c2(), "E1 + %"),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(parse_element(c2(), "E9").is_err());
        assert!(parse_element(c2(), "E1 F1").is_err());
        assert!(parse_element(c2(), "(E1").is_err());
        assert!(parse_element(c2(), "E1^-1").is_err());
        assert!(parse_element(c2(), "1/E1").is_err());
        assert!(parse_element(c2(), "K1^-3*K2^2").is_ok());
    }
}
