//! Parser for the polynomial text grammar.
//!
//! Terms joined by `+`/`-`, coefficients as integers or `a/b`, variables
//! `Y1`, `U[s][i][j]`, `T3`, `Z2`, `c1` (plus bare identifiers for auxiliary
//! variables and `X` as an alias for `Y1`), exponents `^k`, multiplication
//! `*`. Example: `Y1^2 - 2/3*U[1][2][2]*Y1 + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::scalar::Field;
use super::var::VarId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Cursor<'a> {
        Cursor { src: src.as_bytes(), pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().map_or(false, |b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn uint_u32(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| ParseError {
            position: start,
            message: "index out of range".into(),
        })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .map_or(false, |b| b.is_ascii_alphanumeric() || b == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string()
    }

    fn variable(&mut self) -> Result<VarId, ParseError> {
        match self.peek() {
            Some(b'U') if self.src.get(self.pos + 1) == Some(&b'[') => {
                self.pos += 1;
                let mut idx = [0u32; 3];
                for slot in idx.iter_mut() {
                    self.expect(b'[')?;
                    *slot = self.uint_u32()?;
                    self.expect(b']')?;
                }
                Ok(VarId::U { s: idx[0], i: idx[1], j: idx[2] })
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                let name = self.ident();
                let (head, tail) = name.split_at(1);
                let index: Option<u32> =
                    if !tail.is_empty() && tail.bytes().all(|b| b.is_ascii_digit()) {
                        tail.parse().ok()
                    } else {
                        None
                    };
                match (head, index) {
                    ("Y", Some(k)) if k >= 1 => Ok(VarId::Y(k)),
                    ("Z", Some(k)) if k >= 1 => Ok(VarId::Z(k)),
                    ("c", Some(k)) if k >= 1 => Ok(VarId::C(k)),
                    ("T", Some(k)) if k >= 1 => Ok(VarId::T(k)),
                    ("X", None) if tail.is_empty() => Ok(VarId::Y(1)),
                    _ => {
                        if name.is_empty() {
                            Err(ParseError {
                                position: start,
                                message: "expected a variable".into(),
                            })
                        } else {
                            Ok(VarId::Aux(name))
                        }
                    }
                }
            }
            _ => Err(self.err("expected a variable")),
        }
    }
}

/// Parses one polynomial in the given field, attaching the given order.
pub fn parse_polynomial(
    src: &str,
    field: Field,
    order: MonomialOrder,
) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(src);
    let mut terms: Vec<(Monomial, super::scalar::Scalar)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    while cur.peek().is_some() {
        // sign
        let mut negative = false;
        if cur.eat(b'-') {
            negative = true;
        } else if cur.eat(b'+') {
            if first {
                return Err(cur.err("unexpected leading '+'"));
            }
        } else if !first {
            return Err(cur.err("expected '+' or '-'"));
        }
        cur.skip_ws();
        first = false;

        // optional leading coefficient
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut saw_coeff = false;
        if cur.peek().map_or(false, |b| b.is_ascii_digit()) {
            num = cur.uint()?;
            saw_coeff = true;
            if cur.eat(b'/') {
                den = cur.uint()?;
            }
        }
        if negative {
            num = -num;
        }

        // factors
        let mut mono = Monomial::one();
        let mut expect_factor = !saw_coeff;
        loop {
            cur.skip_ws();
            if expect_factor || cur.eat(b'*') {
                cur.skip_ws();
                let v = cur.variable()?;
                let mut e = 1u32;
                if cur.eat(b'^') {
                    e = cur.uint_u32()?;
                }
                mono = mono.mul(&Monomial::var_pow(v, e));
                expect_factor = false;
            } else {
                break;
            }
        }

        let coeff = field.from_fraction(&num, &den).map_err(|e| cur.err(e.to_string()))?;
        terms.push((mono, coeff));
        cur.skip_ws();
    }
    Ok(Polynomial::from_terms(terms, field, order))
}
