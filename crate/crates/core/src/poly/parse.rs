//! Parser for the polynomial text format, e.g. `x^2 - 3/2*y*z + 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Ring, SparsePoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().expect("digits parse as an integer")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.next() {
            Some(Token::Int(n)) => {
                u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))
            }
            other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        }
    }

    /// factor := INT ['/' INT] | IDENT ['^' INT]
    fn factor(&mut self, coeff: &mut BigRational, exps: &mut [u32]) -> Result<()> {
        match self.next() {
            Some(Token::Int(n)) => {
                let mut value = BigRational::from_integer(n);
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Int(d)) if !d.is_zero() => {
                            value /= BigRational::from_integer(d);
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "expected nonzero denominator, found {other:?}"
                            )))
                        }
                    }
                }
                *coeff *= value;
            }
            Some(Token::Ident(name)) => {
                let idx = self.ring.index_of(&name).ok_or_else(|| {
                    Error::Parse(format!("unknown variable {name} (ring {})", self.ring))
                })?;
                let e = if self.peek() == Some(&Token::Caret) {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| Error::Parse("exponent too large".into()))?;
            }
            other => return Err(Error::Parse(format!("expected a factor, found {other:?}"))),
        }
        Ok(())
    }

    fn poly(&mut self) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(self.ring);
        let mut first = true;
        while self.pos < self.tokens.len() || first {
            let mut sign = BigRational::one();
            match self.peek() {
                Some(Token::Plus) => self.pos += 1,
                Some(Token::Minus) => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ if first => {}
                other => {
                    return Err(Error::Parse(format!("expected + or -, found {other:?}")));
                }
            }
            first = false;
            let mut coeff = sign;
            let mut exps = vec![0u32; self.ring.nvars()];
            self.factor(&mut coeff, &mut exps)?;
            while self.peek() == Some(&Token::Star) {
                self.pos += 1;
                self.factor(&mut coeff, &mut exps)?;
            }
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }
}

pub(super) fn parse(ring: &Ring, text: &str) -> Result<SparsePoly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Parser { ring, tokens, pos: 0 }.poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage() {
        let r = Ring::xyz();
        for bad in ["", "x +", "x ^ y", "w", "1/0", "x y", "x**2", "(x)"] {
            assert!(parse(&r, bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn parses_repeated_variables_and_leading_sign() {
        let r = Ring::xyz();
        let p = parse(&r, "-x*x*2 + 2*x^2 + y").unwrap();
        assert_eq!(p, parse(&r, "y").unwrap());
    }
}
